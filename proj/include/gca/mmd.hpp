#pragma once

#include <Eigen/Dense>

#include "gca/spd.hpp"

namespace gca {

/// Block-constant PSD coefficient matrix turning the squared mean
/// discrepancy into the quadratic form tr(A X L X^T).
struct MmdCoefficients {
  int n_source = 0;
  int n_target = 0;
  Eigen::MatrixXd matrix;
};

/// Source-source block 1/n^2, target-target 1/m^2, cross blocks -1/(mn).
MmdCoefficients mmd_coefficients(int n, int m);

/// X L X^T for X of shape dim x (n+m) with samples as columns. Symmetric
/// PSD; equals the outer product of the empirical mean difference.
Eigen::MatrixXd mmd_penalty_matrix(const Eigen::MatrixXd& x,
                                   const MmdCoefficients& l);

enum class CombineMode { kAdditive, kCascaded };

/// Additive: A_s + X L X^T (already SPD since A_s is; lifted by
/// regularize only if certification fails). Cascaded: the geodesic point
/// A_s #_gamma regularize(X L X^T).
SpdMatrix combined_source_matrix(const SpdMatrix& a_s, const Eigen::MatrixXd& x,
                                 const MmdCoefficients& l, CombineMode mode,
                                 double gamma, double eps = kDefaultEps);

/// Same combination rule applied to a precomputed penalty matrix.
SpdMatrix combine_with_penalty(const SpdMatrix& a_s,
                               const Eigen::MatrixXd& penalty,
                               CombineMode mode, double gamma,
                               double eps = kDefaultEps);

}  // namespace gca
