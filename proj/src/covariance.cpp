#include "gca/covariance.hpp"

#include <sstream>

namespace gca {

namespace {

void check_samples(const Eigen::MatrixXd& samples) {
  if (samples.rows() < 2) {
    std::ostringstream os;
    os << "need at least 2 samples to form a scatter matrix, got "
       << samples.rows();
    throw ContractError(os.str());
  }
}

}  // namespace

Eigen::MatrixXd centered_scatter(const Eigen::MatrixXd& samples) {
  check_samples(samples);
  Eigen::RowVectorXd mean = samples.colwise().mean();
  Eigen::MatrixXd centered = samples.rowwise() - mean;
  return centered.transpose() * centered;
}

SpdMatrix pairwise_scatter(const Eigen::MatrixXd& samples, double eps) {
  const double n = static_cast<double>(samples.rows());
  const double pair_count = n * (n - 1.0) / 2.0;
  return regularize(n / pair_count * centered_scatter(samples), eps);
}

SpdMatrix pairwise_scatter(const DomainDataset& data, double eps) {
  return pairwise_scatter(data.features, eps);
}

SpdMatrix empirical_covariance(const Eigen::MatrixXd& samples, double eps) {
  const double n = static_cast<double>(samples.rows());
  return regularize(centered_scatter(samples) / (n - 1.0), eps);
}

SpdMatrix empirical_covariance(const DomainDataset& data, double eps) {
  return empirical_covariance(data.features, eps);
}

}  // namespace gca
