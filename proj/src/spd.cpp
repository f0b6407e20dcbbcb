#include "gca/spd.hpp"

#include <cmath>
#include <sstream>

namespace gca {

namespace {

void check_square_finite(const Eigen::MatrixXd& m) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    std::ostringstream os;
    os << "expected a non-empty square matrix, got " << m.rows() << "x"
       << m.cols();
    throw ContractError(os.str());
  }
  if (!m.allFinite()) {
    throw ContractError("matrix has non-finite entries");
  }
}

void check_same_dim(const SpdMatrix& a, const SpdMatrix& b) {
  if (a.dim() != b.dim()) {
    std::ostringstream os;
    os << "dimension mismatch: " << a.dim() << " vs " << b.dim();
    throw ContractError(os.str());
  }
}

}  // namespace

SymEig sym_eig(const Eigen::MatrixXd& m) {
  check_square_finite(m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success) {
    std::ostringstream os;
    os << "symmetric eigendecomposition failed to converge (dim=" << m.rows()
       << ")";
    throw NumericalError(os.str());
  }
  return SymEig{solver.eigenvalues(), solver.eigenvectors()};
}

SpdMatrix::SpdMatrix(const Eigen::MatrixXd& m) {
  check_square_finite(m);
  const double scale = m.cwiseAbs().maxCoeff();
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymTol * std::max(scale, 1e-300)) {
    std::ostringstream os;
    os << "matrix is not symmetric: max|M - M^T| = " << asym
       << " exceeds tolerance " << kSymTol * scale;
    throw ContractError(os.str());
  }
  matrix_ = 0.5 * (m + m.transpose());
  eig_ = sym_eig(matrix_);
  if (eig_.eigenvalues(0) <= 0.0) {
    std::ostringstream os;
    os << "matrix is not positive definite: min eigenvalue = "
       << eig_.eigenvalues(0);
    throw ContractError(os.str());
  }
}

SpdMatrix SpdMatrix::identity(Eigen::Index dim) {
  return SpdMatrix(Eigen::MatrixXd::Identity(dim, dim));
}

SpdMatrix spd_pow(const SpdMatrix& m, double p) {
  const SymEig& e = m.eig();
  Eigen::VectorXd powered = e.eigenvalues.array().pow(p);
  Eigen::MatrixXd out =
      e.eigenvectors * powered.asDiagonal() * e.eigenvectors.transpose();
  return SpdMatrix(0.5 * (out + out.transpose()));
}

SpdMatrix spd_inverse(const SpdMatrix& m) { return spd_pow(m, -1.0); }

SpdMatrix sharp_mean(const SpdMatrix& x, const SpdMatrix& y, double t) {
  check_same_dim(x, y);
  if (t < 0.0 || t > 1.0) {
    std::ostringstream os;
    os << "geodesic parameter t must lie in [0,1], got " << t;
    throw ContractError(os.str());
  }
  const SymEig& ex = x.eig();
  Eigen::VectorXd sqrt_l = ex.eigenvalues.array().sqrt();
  Eigen::MatrixXd x_half =
      ex.eigenvectors * sqrt_l.asDiagonal() * ex.eigenvectors.transpose();
  Eigen::MatrixXd x_neg_half = ex.eigenvectors *
                               sqrt_l.cwiseInverse().asDiagonal() *
                               ex.eigenvectors.transpose();
  Eigen::MatrixXd inner = x_neg_half * y.matrix() * x_neg_half;
  SymEig ei = sym_eig(0.5 * (inner + inner.transpose()));
  Eigen::VectorXd powered = ei.eigenvalues.array().max(0.0).pow(t);
  Eigen::MatrixXd mid =
      ei.eigenvectors * powered.asDiagonal() * ei.eigenvectors.transpose();
  Eigen::MatrixXd out = x_half * mid * x_half;
  return SpdMatrix(0.5 * (out + out.transpose()));
}

SpdMatrix riccati_solve(const SpdMatrix& as, const SpdMatrix& at) {
  check_same_dim(as, at);
  if (as.condition_number() > kCondMax) {
    std::ostringstream os;
    os << "source matrix is near-singular (condition number "
       << as.condition_number() << " > " << kCondMax
       << "); regularize the input before solving";
    throw NumericalError(os.str());
  }
  return sharp_mean(spd_inverse(as), at, 0.5);
}

double riemannian_distance_sq(const SpdMatrix& x, const SpdMatrix& y) {
  check_same_dim(x, y);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      x.matrix(), y.matrix(), Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("generalized eigendecomposition failed");
  }
  return solver.eigenvalues().array().log().square().sum();
}

SpdMatrix regularize(const Eigen::MatrixXd& m, double eps) {
  check_square_finite(m);
  if (eps <= 0.0) {
    throw ContractError("regularization eps must be positive");
  }
  Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
  const double mean_diag = std::max(sym.diagonal().mean(), 0.0);
  double shift = std::max(eps * mean_diag, eps);
  const double min_eig = sym_eig(sym).eigenvalues(0);
  if (min_eig + shift <= 0.0) {
    shift += -min_eig + eps;
  }
  sym.diagonal().array() += shift;
  return SpdMatrix(sym);
}

}  // namespace gca
