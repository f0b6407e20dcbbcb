#include "gca/mmd.hpp"

#include <sstream>

#include "gca/errors.hpp"

namespace gca {

MmdCoefficients mmd_coefficients(int n, int m) {
  if (n < 1 || m < 1) {
    throw ContractError("mmd_coefficients requires n >= 1 and m >= 1");
  }
  Eigen::MatrixXd l(n + m, n + m);
  l.topLeftCorner(n, n).setConstant(1.0 / (static_cast<double>(n) * n));
  l.bottomRightCorner(m, m).setConstant(1.0 / (static_cast<double>(m) * m));
  l.topRightCorner(n, m).setConstant(-1.0 / (static_cast<double>(m) * n));
  l.bottomLeftCorner(m, n).setConstant(-1.0 / (static_cast<double>(m) * n));
  return MmdCoefficients{n, m, std::move(l)};
}

Eigen::MatrixXd mmd_penalty_matrix(const Eigen::MatrixXd& x,
                                   const MmdCoefficients& l) {
  if (x.cols() != l.matrix.rows()) {
    std::ostringstream os;
    os << "stacked data has " << x.cols() << " columns but L is "
       << l.matrix.rows() << "x" << l.matrix.cols();
    throw ContractError(os.str());
  }
  Eigen::MatrixXd p = x * l.matrix * x.transpose();
  return 0.5 * (p + p.transpose());
}

SpdMatrix combine_with_penalty(const SpdMatrix& a_s,
                               const Eigen::MatrixXd& penalty,
                               CombineMode mode, double gamma, double eps) {
  if (penalty.rows() != a_s.dim() || penalty.cols() != a_s.dim()) {
    throw ContractError("penalty matrix dimension does not match A_s");
  }
  if (mode == CombineMode::kAdditive) {
    Eigen::MatrixXd sum = a_s.matrix() + penalty;
    sum = 0.5 * (sum + sum.transpose()).eval();
    try {
      return SpdMatrix(sum);
    } catch (const ContractError&) {
      return regularize(sum, eps);
    }
  }
  return sharp_mean(a_s, regularize(penalty, eps), gamma);
}

SpdMatrix combined_source_matrix(const SpdMatrix& a_s, const Eigen::MatrixXd& x,
                                 const MmdCoefficients& l, CombineMode mode,
                                 double gamma, double eps) {
  return combine_with_penalty(a_s, mmd_penalty_matrix(x, l), mode, gamma, eps);
}

}  // namespace gca
