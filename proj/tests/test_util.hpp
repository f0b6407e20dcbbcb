#pragma once

#include <Eigen/Dense>

#include "gca/rng.hpp"
#include "gca/spd.hpp"

namespace gca::test {

inline Eigen::MatrixXd random_gaussian(Rng& rng, Eigen::Index rows,
                                       Eigen::Index cols) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      m(i, j) = rng.normal();
    }
  }
  return m;
}

inline Eigen::MatrixXd random_orthogonal(Rng& rng, Eigen::Index dim) {
  Eigen::MatrixXd g = random_gaussian(rng, dim, dim);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  // fix signs so Q is a deterministic function of g
  Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j) {
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  }
  return q;
}

/// Random SPD matrix with eigenvalues log-uniform so the condition
/// number is at most cond.
inline SpdMatrix random_spd(Rng& rng, Eigen::Index dim, double cond = 1e4) {
  Eigen::MatrixXd q = random_orthogonal(rng, dim);
  const double half_span = 0.5 * std::log(cond);
  Eigen::VectorXd eigs(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    eigs(i) = std::exp((2.0 * rng.uniform() - 1.0) * half_span);
  }
  Eigen::MatrixXd m = q * eigs.asDiagonal() * q.transpose();
  return SpdMatrix(0.5 * (m + m.transpose()));
}

/// Pair of commuting SPD matrices (shared eigenbasis).
inline std::pair<SpdMatrix, SpdMatrix> random_commuting_pair(Rng& rng,
                                                             Eigen::Index dim) {
  Eigen::MatrixXd q = random_orthogonal(rng, dim);
  auto draw = [&] {
    Eigen::VectorXd eigs(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      eigs(i) = std::exp(2.0 * rng.uniform() - 1.0);
    }
    Eigen::MatrixXd m = q * eigs.asDiagonal() * q.transpose();
    return SpdMatrix(0.5 * (m + m.transpose()));
  };
  return {draw(), draw()};
}

inline double rel_error(const Eigen::MatrixXd& got,
                        const Eigen::MatrixXd& want) {
  return (got - want).norm() / std::max(want.norm(), 1e-300);
}

}  // namespace gca::test
