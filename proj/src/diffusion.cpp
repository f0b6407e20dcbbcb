#include "gca/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

namespace gca {

namespace {

Eigen::MatrixXd squared_distances(const Eigen::MatrixXd& samples) {
  Eigen::VectorXd sq = samples.rowwise().squaredNorm();
  Eigen::MatrixXd d2 = sq.replicate(1, samples.rows()) +
                       sq.transpose().replicate(samples.rows(), 1) -
                       2.0 * samples * samples.transpose();
  return d2.cwiseMax(0.0);
}

}  // namespace

double median_pairwise_distance(const Eigen::MatrixXd& samples) {
  const Eigen::Index n = samples.rows();
  if (n < 2) {
    throw ContractError("median_pairwise_distance needs at least 2 samples");
  }
  Eigen::MatrixXd d2 = squared_distances(samples);
  std::vector<double> dists;
  dists.reserve(static_cast<size_t>(n) * (n - 1) / 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      dists.push_back(std::sqrt(d2(i, j)));
    }
  }
  auto mid = dists.begin() + dists.size() / 2;
  std::nth_element(dists.begin(), mid, dists.end());
  return *mid;
}

Eigen::MatrixXd knn_graph(const Eigen::MatrixXd& samples, int k,
                          double bandwidth) {
  const Eigen::Index n = samples.rows();
  if (k < 1 || k >= n) {
    std::ostringstream os;
    os << "k must satisfy 1 <= k < num_samples, got k=" << k << " with " << n
       << " samples";
    throw ContractError(os.str());
  }
  if (!(bandwidth > 0.0)) {
    throw ContractError("bandwidth must be positive");
  }
  Eigen::MatrixXd d2 = squared_distances(samples);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    std::vector<Eigen::Index> order;
    order.reserve(static_cast<size_t>(n - 1));
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j != i) order.push_back(j);
    }
    std::partial_sort(order.begin(), order.begin() + k, order.end(),
                      [&](Eigen::Index a, Eigen::Index b) {
                        return d2(i, a) != d2(i, b) ? d2(i, a) < d2(i, b)
                                                    : a < b;
                      });
    for (int j = 0; j < k; ++j) {
      const Eigen::Index nb = order[static_cast<size_t>(j)];
      const double weight =
          std::exp(-d2(i, nb) / (2.0 * bandwidth * bandwidth));
      w(i, nb) = std::max(w(i, nb), weight);
      w(nb, i) = w(i, nb);
    }
  }
  return w;
}

Eigen::MatrixXd knn_graph(const DomainDataset& data, int k, double bandwidth) {
  return knn_graph(data.features, k, bandwidth);
}

DiffusionSpectrum diffusion_spectrum(const Eigen::MatrixXd& w, int num_kept) {
  const Eigen::Index n = w.rows();
  if (w.cols() != n) {
    throw ContractError("weight matrix must be square");
  }
  if (num_kept < 1 || num_kept > n) {
    throw ContractError("num_kept must lie in [1, num_samples]");
  }
  Eigen::VectorXd degree = w.rowwise().sum();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(degree(i) > 0.0)) {
      std::ostringstream os;
      os << "graph is disconnected: vertex " << i
         << " has zero degree; increase k or the bandwidth";
      throw NumericalError(os.str());
    }
  }
  // reachability from vertex 0; a split graph has no meaningful single
  // random-walk spectrum
  std::vector<char> seen(static_cast<size_t>(n), 0);
  std::vector<Eigen::Index> frontier{0};
  seen[0] = 1;
  while (!frontier.empty()) {
    const Eigen::Index v = frontier.back();
    frontier.pop_back();
    for (Eigen::Index j = 0; j < n; ++j) {
      if (w(v, j) > 0.0 && !seen[static_cast<size_t>(j)]) {
        seen[static_cast<size_t>(j)] = 1;
        frontier.push_back(j);
      }
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!seen[static_cast<size_t>(i)]) {
      std::ostringstream os;
      os << "graph is disconnected: vertex " << i
         << " is unreachable from vertex 0; increase k or the bandwidth";
      throw NumericalError(os.str());
    }
  }
  Eigen::VectorXd d_inv_sqrt = degree.cwiseSqrt().cwiseInverse();
  Eigen::MatrixXd conj =
      d_inv_sqrt.asDiagonal() * w * d_inv_sqrt.asDiagonal();
  SymEig e = sym_eig(0.5 * (conj + conj.transpose()));
  // ascending -> take the top num_kept in descending order
  DiffusionSpectrum spec;
  spec.eigenvalues.resize(num_kept);
  spec.eigenvectors.resize(n, num_kept);
  for (int j = 0; j < num_kept; ++j) {
    const Eigen::Index src = n - 1 - j;
    spec.eigenvalues(j) = e.eigenvalues(src);
    spec.eigenvectors.col(j) =
        d_inv_sqrt.asDiagonal() * e.eigenvectors.col(src);
  }
  return spec;
}

SpdMatrix diffusion_kernel(const DiffusionSpectrum& spec, double sigma,
                           double eps) {
  if (!(sigma > 0.0)) {
    throw ContractError("sigma must be positive");
  }
  const Eigen::Index n = spec.eigenvectors.rows();
  Eigen::MatrixXd kernel = Eigen::MatrixXd::Zero(n, n);
  int used = 0;
  for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i) {
    const double lambda = spec.eigenvalues(i);
    if (lambda <= kSpectrumFloor) {
      continue;
    }
    Eigen::VectorXd v = spec.eigenvectors.col(i).normalized();
    kernel += std::exp(-sigma * sigma / (2.0 * lambda)) * v * v.transpose();
    ++used;
  }
  if (used == 0) {
    throw NumericalError(
        "degenerate diffusion spectrum: no eigenvalue above the floor");
  }
  return regularize(kernel, eps);
}

SpdMatrix block_kernel(const SpdMatrix& k_s, const SpdMatrix& k_t) {
  const Eigen::Index n = k_s.dim();
  const Eigen::Index m = k_t.dim();
  Eigen::MatrixXd block = Eigen::MatrixXd::Zero(n + m, n + m);
  block.topLeftCorner(n, n) = spd_inverse(k_s).matrix();
  block.bottomRightCorner(m, m) = spd_inverse(k_t).matrix();
  return SpdMatrix(block);
}

}  // namespace gca
