#pragma once

#include <optional>
#include <string>

#include "gca/baselines.hpp"
#include "gca/covariance.hpp"
#include "gca/diffusion.hpp"
#include "gca/mmd.hpp"

namespace gca {

struct HyperParams {
  double t = 0.5;        // geodesic weight
  double gamma = 0.5;    // cascaded weight
  double mu = 1.0;       // geometry/statistics balance
  int k = 10;            // kNN neighbors
  double bandwidth = 0;  // 0 -> median pairwise distance heuristic
  double sigma = 1.0;    // diffusion kernel scale
  double eps = kDefaultEps;
  int num_kept = 20;           // diffusion eigenpairs (clamped to n-1)
  bool kernel_ablation = false;  // replace K by 0 in GCA3

  void validate() const;
};

enum class Method {
  kNa,
  kCoral,
  kSa,
  kBaselineS,
  kBaselineT,
  kGca1,
  kGca2,
  kGca3,
  kCascadedGca2,
  kCascadedGca3,
};

std::string method_name(Method m);
Method method_from_name(const std::string& name);
bool is_spd_method(Method m);

/// Learned adaptation: an SPD Mahalanobis matrix for the GCA family, a
/// general linear transform for the baselines. Exactly one is populated.
struct AdaptationModel {
  Method method = Method::kNa;
  HyperParams params;
  std::optional<SpdMatrix> metric;
  std::optional<LinearTransform> transform;

  Eigen::Index dim() const;
};

// The adaptation API sees target features only; target labels never
// reach these code paths.
AdaptationModel gca1(const DomainDataset& source,
                     const Eigen::MatrixXd& target_features,
                     const HyperParams& p);
AdaptationModel gca2(const DomainDataset& source,
                     const Eigen::MatrixXd& target_features,
                     const HyperParams& p);
AdaptationModel cascaded_gca2(const DomainDataset& source,
                              const Eigen::MatrixXd& target_features,
                              const HyperParams& p);
AdaptationModel gca3(const DomainDataset& source,
                     const Eigen::MatrixXd& target_features,
                     const HyperParams& p);
AdaptationModel cascaded_gca3(const DomainDataset& source,
                              const Eigen::MatrixXd& target_features,
                              const HyperParams& p);

/// Source samples (rows) mapped by the learned adaptation: x -> A x for
/// SPD models, x -> W x for baseline transforms.
Eigen::MatrixXd adapt_features(const AdaptationModel& model,
                               const Eigen::MatrixXd& source_features);

/// Target-side map; identity for SPD models and CORAL, the subspace
/// projection for SA and the PCA baselines.
Eigen::MatrixXd map_target_features(const AdaptationModel& model,
                                    const Eigen::MatrixXd& target_features);

/// Samples stacked as columns: dim x (n + m).
Eigen::MatrixXd stack_columns(const Eigen::MatrixXd& source_features,
                              const Eigen::MatrixXd& target_features);

/// X (K + mu L) X^T with K the block kernel of the per-domain diffusion
/// kernels (zero under ablation).
Eigen::MatrixXd geometry_penalty_matrix(const Eigen::MatrixXd& source_features,
                                        const Eigen::MatrixXd& target_features,
                                        const HyperParams& p);

// Objective evaluators; used to certify optimality, not to optimize.
double objective_omega(const SpdMatrix& a, const SpdMatrix& a_s,
                       const SpdMatrix& a_t);
double objective_penalized(const SpdMatrix& a, const SpdMatrix& a_s,
                           const SpdMatrix& a_t,
                           const Eigen::MatrixXd& penalty);
double objective_weighted(const SpdMatrix& a, const SpdMatrix& combined_source,
                          const SpdMatrix& a_t, double t);

/// grad omega = A_s - A^{-1} A_t A^{-1}; the penalized variants add the
/// penalty matrix.
Eigen::MatrixXd gradient_omega(const SpdMatrix& a, const SpdMatrix& a_s,
                               const SpdMatrix& a_t);
Eigen::MatrixXd gradient_penalized(const SpdMatrix& a, const SpdMatrix& a_s,
                                   const SpdMatrix& a_t,
                                   const Eigen::MatrixXd& penalty);

/// tr(A X L X^T): squared mean discrepancy in the metric A.
double mmd_value(const SpdMatrix& a, const Eigen::MatrixXd& penalty);

}  // namespace gca
