#pragma once

#include <Eigen/Dense>

#include "gca/covariance.hpp"
#include "gca/dataset.hpp"

namespace gca {

enum class TransformKind {
  kIdentity,
  kCoral,
  kSubspaceAlignment,
  kPcaSource,
  kPcaTarget,
};

/// General linear adaptation: source samples map through source_map,
/// target samples through target_map (identity except for the
/// subspace/PCA methods, which project both domains).
struct LinearTransform {
  Eigen::MatrixXd source_map;
  Eigen::MatrixXd target_map;
  TransformKind kind = TransformKind::kIdentity;
};

LinearTransform no_adaptation(Eigen::Index dim);

/// Whiten with A_s^{-1/2}, recolor with A_t^{1/2}: W = A_t^{1/2} A_s^{-1/2},
/// so W A_s W^T = A_t exactly.
LinearTransform coral(const SpdMatrix& a_s, const SpdMatrix& a_t);
LinearTransform coral(const DomainDataset& source,
                      const Eigen::MatrixXd& target_features,
                      double eps = kDefaultEps);

/// Top-d PCA basis of the samples, components ordered by descending
/// eigenvalue, sign fixed so each component's largest-magnitude entry is
/// positive. Columns are components.
Eigen::MatrixXd pca_basis(const Eigen::MatrixXd& samples, int d);

/// Source mapped into target subspace coordinates via M = P_S^T P_T:
/// x_s -> M^T P_S^T x_s, x_t -> P_T^T x_t.
LinearTransform subspace_alignment(const DomainDataset& source,
                                   const Eigen::MatrixXd& target_features,
                                   int d);

enum class PcaSide { kSourceBasis, kTargetBasis };

/// Projects both domains onto the chosen domain's top-d PCA basis.
LinearTransform pca_baseline(const DomainDataset& source,
                             const Eigen::MatrixXd& target_features, int d,
                             PcaSide which);

}  // namespace gca
