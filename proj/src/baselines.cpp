#include "gca/baselines.hpp"

#include <sstream>

namespace gca {

LinearTransform no_adaptation(Eigen::Index dim) {
  Eigen::MatrixXd id = Eigen::MatrixXd::Identity(dim, dim);
  return LinearTransform{id, id, TransformKind::kIdentity};
}

LinearTransform coral(const SpdMatrix& a_s, const SpdMatrix& a_t) {
  if (a_s.dim() != a_t.dim()) {
    throw ContractError("coral: covariance dimensions differ");
  }
  Eigen::MatrixXd w =
      spd_pow(a_t, 0.5).matrix() * spd_pow(a_s, -0.5).matrix();
  return LinearTransform{
      w, Eigen::MatrixXd::Identity(a_s.dim(), a_s.dim()),
      TransformKind::kCoral};
}

LinearTransform coral(const DomainDataset& source,
                      const Eigen::MatrixXd& target_features, double eps) {
  return coral(empirical_covariance(source.features, eps),
               empirical_covariance(target_features, eps));
}

Eigen::MatrixXd pca_basis(const Eigen::MatrixXd& samples, int d) {
  if (d < 1 || d > samples.cols()) {
    std::ostringstream os;
    os << "subspace dimension " << d << " out of range for " << samples.cols()
       << "-dimensional data";
    throw ContractError(os.str());
  }
  SymEig e = sym_eig(centered_scatter(samples));
  const Eigen::Index dim = samples.cols();
  Eigen::MatrixXd basis(dim, d);
  for (int j = 0; j < d; ++j) {
    Eigen::VectorXd v = e.eigenvectors.col(dim - 1 - j);
    Eigen::Index argmax = 0;
    v.cwiseAbs().maxCoeff(&argmax);
    if (v(argmax) < 0.0) v = -v;
    basis.col(j) = v;
  }
  return basis;
}

LinearTransform subspace_alignment(const DomainDataset& source,
                                   const Eigen::MatrixXd& target_features,
                                   int d) {
  if (source.dim() != target_features.cols()) {
    throw ContractError("subspace_alignment: feature dimensions differ");
  }
  const Eigen::Index max_d =
      std::min(source.num_samples(), target_features.rows()) - 1;
  if (d > max_d) {
    std::ostringstream os;
    os << "subspace dimension " << d << " exceeds min(n, m) - 1 = " << max_d;
    throw ContractError(os.str());
  }
  Eigen::MatrixXd p_s = pca_basis(source.features, d);
  Eigen::MatrixXd p_t = pca_basis(target_features, d);
  Eigen::MatrixXd m = p_s.transpose() * p_t;  // argmin |P_S M - P_T|_F
  return LinearTransform{m.transpose() * p_s.transpose(), p_t.transpose(),
                         TransformKind::kSubspaceAlignment};
}

LinearTransform pca_baseline(const DomainDataset& source,
                             const Eigen::MatrixXd& target_features, int d,
                             PcaSide which) {
  if (source.dim() != target_features.cols()) {
    throw ContractError("pca_baseline: feature dimensions differ");
  }
  Eigen::MatrixXd basis = which == PcaSide::kSourceBasis
                              ? pca_basis(source.features, d)
                              : pca_basis(target_features, d);
  return LinearTransform{basis.transpose(), basis.transpose(),
                         which == PcaSide::kSourceBasis
                             ? TransformKind::kPcaSource
                             : TransformKind::kPcaTarget};
}

}  // namespace gca
