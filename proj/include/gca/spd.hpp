#pragma once

#include <Eigen/Dense>

#include "gca/errors.hpp"

namespace gca {

inline constexpr double kSymTol = 1e-9;
inline constexpr double kCondMax = 1e12;
inline constexpr double kDefaultEps = 1e-6;

/// Eigendecomposition of a symmetric matrix, eigenvalues ascending,
/// eigenvector columns orthonormal.
struct SymEig {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
};

SymEig sym_eig(const Eigen::MatrixXd& m);

/// Dense symmetric positive definite matrix. The positive spectrum is
/// certified at construction; construction throws otherwise. Immutable.
class SpdMatrix {
 public:
  /// Certifies symmetry (relative tolerance kSymTol) and a strictly
  /// positive spectrum. The stored matrix is the symmetrized input.
  explicit SpdMatrix(const Eigen::MatrixXd& m);

  static SpdMatrix identity(Eigen::Index dim);

  Eigen::Index dim() const { return matrix_.rows(); }
  const Eigen::MatrixXd& matrix() const { return matrix_; }
  const SymEig& eig() const { return eig_; }

  double min_eigenvalue() const { return eig_.eigenvalues(0); }
  double max_eigenvalue() const { return eig_.eigenvalues(dim() - 1); }
  double condition_number() const { return max_eigenvalue() / min_eigenvalue(); }

 private:
  Eigen::MatrixXd matrix_;
  SymEig eig_;
};

/// V diag(lambda^p) V^T; SPD for any real p.
SpdMatrix spd_pow(const SpdMatrix& m, double p);

SpdMatrix spd_inverse(const SpdMatrix& m);

/// Point at parameter t on the geodesic from x to y:
/// x^{1/2} (x^{-1/2} y x^{-1/2})^t x^{1/2}.
SpdMatrix sharp_mean(const SpdMatrix& x, const SpdMatrix& y, double t);

/// Unique SPD solution of A as A = at, i.e. the geometric mean of
/// as^{-1} and at. Inputs above condition number kCondMax are rejected.
SpdMatrix riccati_solve(const SpdMatrix& as, const SpdMatrix& at);

/// Squared affine-invariant distance: sum of squared logs of the
/// generalized eigenvalues of (x, y).
double riemannian_distance_sq(const SpdMatrix& x, const SpdMatrix& y);

/// Symmetrize and lift a (near-)PSD matrix into the SPD cone:
/// (m + m^T)/2 + shift I with shift = max(eps * mean(diag), eps),
/// enlarged if needed so the result is certifiably SPD.
SpdMatrix regularize(const Eigen::MatrixXd& m, double eps = kDefaultEps);

}  // namespace gca
