#pragma once

#include "gca/dataset.hpp"
#include "gca/spd.hpp"

namespace gca {

/// All-unordered-pairs scatter, normalized by the pair count n(n-1)/2 and
/// regularized to SPD. Uses the closed form
/// sum_{i<j} (x_i - x_j)(x_i - x_j)^T = n sum_i (x_i - xbar)(x_i - xbar)^T,
/// which works out to twice the empirical covariance.
SpdMatrix pairwise_scatter(const Eigen::MatrixXd& samples,
                           double eps = kDefaultEps);
SpdMatrix pairwise_scatter(const DomainDataset& data,
                           double eps = kDefaultEps);

/// Standard (n-1)-normalized covariance, regularized to SPD.
SpdMatrix empirical_covariance(const Eigen::MatrixXd& samples,
                               double eps = kDefaultEps);
SpdMatrix empirical_covariance(const DomainDataset& data,
                               double eps = kDefaultEps);

/// Centered second-moment sum: sum_i (x_i - xbar)(x_i - xbar)^T, without
/// normalization or regularization.
Eigen::MatrixXd centered_scatter(const Eigen::MatrixXd& samples);

}  // namespace gca
