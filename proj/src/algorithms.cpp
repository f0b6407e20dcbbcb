#include "gca/algorithms.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace gca {

void HyperParams::validate() const {
  if (t < 0.0 || t > 1.0) throw ContractError("t must lie in [0,1]");
  if (gamma < 0.0 || gamma > 1.0) throw ContractError("gamma must lie in [0,1]");
  if (mu < 0.0) throw ContractError("mu must be nonnegative");
  if (k < 1) throw ContractError("k must be positive");
  if (bandwidth < 0.0) throw ContractError("bandwidth must be nonnegative");
  if (sigma <= 0.0) throw ContractError("sigma must be positive");
  if (eps <= 0.0) throw ContractError("eps must be positive");
  if (num_kept < 1) throw ContractError("num_kept must be positive");
}

std::string method_name(Method m) {
  switch (m) {
    case Method::kNa: return "NA";
    case Method::kCoral: return "CORAL";
    case Method::kSa: return "SA";
    case Method::kBaselineS: return "B-S";
    case Method::kBaselineT: return "B-T";
    case Method::kGca1: return "GCA1";
    case Method::kGca2: return "GCA2";
    case Method::kGca3: return "GCA3";
    case Method::kCascadedGca2: return "Cascaded-GCA2";
    case Method::kCascadedGca3: return "Cascaded-GCA3";
  }
  throw ContractError("unknown method enum value");
}

Method method_from_name(const std::string& name) {
  std::string up;
  for (char c : name) up.push_back(static_cast<char>(std::toupper(c)));
  if (up == "NA") return Method::kNa;
  if (up == "CORAL") return Method::kCoral;
  if (up == "SA") return Method::kSa;
  if (up == "B-S" || up == "BS" || up == "BASELINE-S") return Method::kBaselineS;
  if (up == "B-T" || up == "BT" || up == "BASELINE-T") return Method::kBaselineT;
  if (up == "GCA1") return Method::kGca1;
  if (up == "GCA2") return Method::kGca2;
  if (up == "GCA3") return Method::kGca3;
  if (up == "CGCA2" || up == "CASCADED-GCA2") return Method::kCascadedGca2;
  if (up == "CGCA3" || up == "CASCADED-GCA3") return Method::kCascadedGca3;
  throw ContractError("unknown method name: " + name);
}

bool is_spd_method(Method m) {
  switch (m) {
    case Method::kGca1:
    case Method::kGca2:
    case Method::kGca3:
    case Method::kCascadedGca2:
    case Method::kCascadedGca3:
      return true;
    default:
      return false;
  }
}

Eigen::Index AdaptationModel::dim() const {
  if (metric) return metric->dim();
  if (transform) return transform->source_map.cols();
  throw ContractError("adaptation model is empty");
}

namespace {

void check_dims(const DomainDataset& source,
                const Eigen::MatrixXd& target_features) {
  if (source.dim() != target_features.cols()) {
    std::ostringstream os;
    os << "source dimension " << source.dim() << " != target dimension "
       << target_features.cols();
    throw ContractError(os.str());
  }
  if (target_features.rows() < 2) {
    throw ContractError("target domain needs at least 2 samples");
  }
}

AdaptationModel spd_model(Method method, const HyperParams& p, SpdMatrix a) {
  AdaptationModel model;
  model.method = method;
  model.params = p;
  model.metric = std::move(a);
  return model;
}

}  // namespace

Eigen::MatrixXd stack_columns(const Eigen::MatrixXd& source_features,
                              const Eigen::MatrixXd& target_features) {
  Eigen::MatrixXd x(source_features.cols(),
                    source_features.rows() + target_features.rows());
  x.leftCols(source_features.rows()) = source_features.transpose();
  x.rightCols(target_features.rows()) = target_features.transpose();
  return x;
}

AdaptationModel gca1(const DomainDataset& source,
                     const Eigen::MatrixXd& target_features,
                     const HyperParams& p) {
  p.validate();
  check_dims(source, target_features);
  SpdMatrix a_s = pairwise_scatter(source.features, p.eps);
  SpdMatrix a_t = pairwise_scatter(target_features, p.eps);
  return spd_model(Method::kGca1, p,
                   sharp_mean(spd_inverse(a_s), a_t, p.t));
}

namespace {

AdaptationModel gca2_impl(Method method, CombineMode mode,
                          const DomainDataset& source,
                          const Eigen::MatrixXd& target_features,
                          const HyperParams& p) {
  p.validate();
  check_dims(source, target_features);
  SpdMatrix a_s = pairwise_scatter(source.features, p.eps);
  SpdMatrix a_t = pairwise_scatter(target_features, p.eps);
  MmdCoefficients l =
      mmd_coefficients(static_cast<int>(source.num_samples()),
                       static_cast<int>(target_features.rows()));
  Eigen::MatrixXd x = stack_columns(source.features, target_features);
  SpdMatrix a_m = combined_source_matrix(a_s, x, l, mode, p.gamma, p.eps);
  return spd_model(method, p, sharp_mean(spd_inverse(a_m), a_t, p.t));
}

AdaptationModel gca3_impl(Method method, CombineMode mode,
                          const DomainDataset& source,
                          const Eigen::MatrixXd& target_features,
                          const HyperParams& p) {
  p.validate();
  check_dims(source, target_features);
  SpdMatrix a_s = pairwise_scatter(source.features, p.eps);
  SpdMatrix a_t = pairwise_scatter(target_features, p.eps);
  Eigen::MatrixXd penalty =
      geometry_penalty_matrix(source.features, target_features, p);
  SpdMatrix a_gs = combine_with_penalty(a_s, penalty, mode, p.gamma, p.eps);
  return spd_model(method, p, sharp_mean(spd_inverse(a_gs), a_t, p.t));
}

}  // namespace

Eigen::MatrixXd geometry_penalty_matrix(const Eigen::MatrixXd& source_features,
                                        const Eigen::MatrixXd& target_features,
                                        const HyperParams& p) {
  const int n = static_cast<int>(source_features.rows());
  const int m = static_cast<int>(target_features.rows());
  Eigen::MatrixXd x = stack_columns(source_features, target_features);
  Eigen::MatrixXd combined =
      p.mu * mmd_coefficients(n, m).matrix;
  if (!p.kernel_ablation) {
    auto domain_kernel = [&](const Eigen::MatrixXd& feats) {
      const double bw = p.bandwidth > 0.0 ? p.bandwidth
                                          : median_pairwise_distance(feats);
      Eigen::MatrixXd w = knn_graph(feats, p.k, bw);
      const int kept = std::min<int>(p.num_kept,
                                     static_cast<int>(feats.rows()) - 1);
      return diffusion_kernel(diffusion_spectrum(w, kept), p.sigma, p.eps);
    };
    try {
      combined += block_kernel(domain_kernel(source_features),
                               domain_kernel(target_features))
                      .matrix();
    } catch (const NumericalError& e) {
      throw NumericalError(std::string(e.what()) +
                           " (while building the GCA3 diffusion kernels)");
    }
  }
  Eigen::MatrixXd penalty = x * combined * x.transpose();
  return 0.5 * (penalty + penalty.transpose());
}

AdaptationModel gca2(const DomainDataset& source,
                     const Eigen::MatrixXd& target_features,
                     const HyperParams& p) {
  return gca2_impl(Method::kGca2, CombineMode::kAdditive, source,
                   target_features, p);
}

AdaptationModel cascaded_gca2(const DomainDataset& source,
                              const Eigen::MatrixXd& target_features,
                              const HyperParams& p) {
  return gca2_impl(Method::kCascadedGca2, CombineMode::kCascaded, source,
                   target_features, p);
}

AdaptationModel gca3(const DomainDataset& source,
                     const Eigen::MatrixXd& target_features,
                     const HyperParams& p) {
  return gca3_impl(Method::kGca3, CombineMode::kAdditive, source,
                   target_features, p);
}

AdaptationModel cascaded_gca3(const DomainDataset& source,
                              const Eigen::MatrixXd& target_features,
                              const HyperParams& p) {
  return gca3_impl(Method::kCascadedGca3, CombineMode::kCascaded, source,
                   target_features, p);
}

Eigen::MatrixXd adapt_features(const AdaptationModel& model,
                               const Eigen::MatrixXd& source_features) {
  if (source_features.cols() != model.dim()) {
    std::ostringstream os;
    os << "feature dimension " << source_features.cols()
       << " does not match model dimension " << model.dim();
    throw ContractError(os.str());
  }
  if (model.metric) {
    return source_features * model.metric->matrix();  // A symmetric
  }
  return source_features * model.transform->source_map.transpose();
}

Eigen::MatrixXd map_target_features(const AdaptationModel& model,
                                    const Eigen::MatrixXd& target_features) {
  if (target_features.cols() != model.dim()) {
    throw ContractError("target feature dimension does not match model");
  }
  if (model.metric) {
    return target_features;
  }
  return target_features * model.transform->target_map.transpose();
}

double objective_omega(const SpdMatrix& a, const SpdMatrix& a_s,
                       const SpdMatrix& a_t) {
  return (a.matrix() * a_s.matrix()).trace() +
         (spd_inverse(a).matrix() * a_t.matrix()).trace();
}

double objective_penalized(const SpdMatrix& a, const SpdMatrix& a_s,
                           const SpdMatrix& a_t,
                           const Eigen::MatrixXd& penalty) {
  return objective_omega(a, a_s, a_t) + (a.matrix() * penalty).trace();
}

double objective_weighted(const SpdMatrix& a, const SpdMatrix& combined_source,
                          const SpdMatrix& a_t, double t) {
  return (1.0 - t) * riemannian_distance_sq(a, spd_inverse(combined_source)) +
         t * riemannian_distance_sq(a, a_t);
}

Eigen::MatrixXd gradient_omega(const SpdMatrix& a, const SpdMatrix& a_s,
                               const SpdMatrix& a_t) {
  Eigen::MatrixXd a_inv = spd_inverse(a).matrix();
  return a_s.matrix() - a_inv * a_t.matrix() * a_inv;
}

Eigen::MatrixXd gradient_penalized(const SpdMatrix& a, const SpdMatrix& a_s,
                                   const SpdMatrix& a_t,
                                   const Eigen::MatrixXd& penalty) {
  return gradient_omega(a, a_s, a_t) + penalty;
}

double mmd_value(const SpdMatrix& a, const Eigen::MatrixXd& penalty) {
  return (a.matrix() * penalty).trace();
}

}  // namespace gca
