#pragma once

#include <Eigen/Dense>

#include "gca/dataset.hpp"
#include "gca/spd.hpp"

namespace gca {

inline constexpr double kSpectrumFloor = 1e-6;

/// Leading eigenpairs of the random-walk matrix P = D^{-1} W, eigenvalues
/// descending in [-1, 1] with the leading one equal to 1.
struct DiffusionSpectrum {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;  // num_samples x num_kept
};

/// Gaussian-weighted kNN graph, symmetrized by neighbor union, zero
/// diagonal. W(i,j) = exp(-|x_i - x_j|^2 / (2 bandwidth^2)).
Eigen::MatrixXd knn_graph(const Eigen::MatrixXd& samples, int k,
                          double bandwidth);
Eigen::MatrixXd knn_graph(const DomainDataset& data, int k, double bandwidth);

/// Median of the pairwise Euclidean distances; the default bandwidth.
double median_pairwise_distance(const Eigen::MatrixXd& samples);

/// Top eigenpairs of D^{-1} W computed through the symmetric conjugate
/// D^{-1/2} W D^{-1/2}. Throws on zero-degree vertices.
DiffusionSpectrum diffusion_spectrum(const Eigen::MatrixXd& w, int num_kept);

/// Sum over kept eigenpairs with eigenvalue > kSpectrumFloor of
/// exp(-sigma^2 / (2 lambda_i)) v_i v_i^T, eigenvectors renormalized to
/// unit norm, regularized to SPD.
SpdMatrix diffusion_kernel(const DiffusionSpectrum& spec, double sigma,
                           double eps = kDefaultEps);

/// Block-diagonal SPD matrix diag(K_s^{-1}, K_t^{-1}).
SpdMatrix block_kernel(const SpdMatrix& k_s, const SpdMatrix& k_t);

}  // namespace gca
