#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gca/diffusion.hpp"
#include "test_util.hpp"

using namespace gca;
using namespace gca::test;

TEST_CASE("knn_graph two points") {
  Eigen::MatrixXd samples(2, 2);
  samples << 0, 0, 3, 4;  // distance 5
  const double b = 2.0;
  Eigen::MatrixXd w = knn_graph(samples, 1, b);
  const double expected = std::exp(-25.0 / (2.0 * b * b));
  CHECK(w(0, 1) == doctest::Approx(expected));
  CHECK(w(1, 0) == doctest::Approx(expected));
  CHECK(w(0, 0) == 0.0);
  CHECK(w(1, 1) == 0.0);
}

TEST_CASE("knn_graph duplicate points get weight one") {
  Eigen::MatrixXd samples(3, 2);
  samples << 1, 1, 1, 1, 5, 5;
  Eigen::MatrixXd w = knn_graph(samples, 1, 1.0);
  CHECK(w(0, 1) == doctest::Approx(1.0));
}

TEST_CASE("knn_graph structure on random data") {
  Rng rng(61);
  Eigen::MatrixXd samples = random_gaussian(rng, 40, 3);
  const int k = 5;
  Eigen::MatrixXd w = knn_graph(samples, k, 1.5);
  CHECK(rel_error(w, w.transpose()) < 1e-15);
  CHECK(w.minCoeff() >= 0.0);
  CHECK(w.maxCoeff() <= 1.0);
  CHECK(w.diagonal().cwiseAbs().maxCoeff() == 0.0);
  for (Eigen::Index i = 0; i < w.rows(); ++i) {
    CHECK((w.row(i).array() > 0.0).count() >= k);
  }
}

TEST_CASE("knn_graph rejects k >= n") {
  Eigen::MatrixXd samples(3, 2);
  samples.setRandom();
  CHECK_THROWS_AS(knn_graph(samples, 3, 1.0), ContractError);
  CHECK_THROWS_AS(knn_graph(samples, 2, 0.0), ContractError);
}

TEST_CASE("diffusion_spectrum of the complete graph K3") {
  Eigen::MatrixXd w = Eigen::MatrixXd::Ones(3, 3);
  w.diagonal().setZero();
  DiffusionSpectrum spec = diffusion_spectrum(w, 3);
  CHECK(spec.eigenvalues(0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(spec.eigenvalues(1) == doctest::Approx(-0.5).epsilon(1e-10));
  CHECK(spec.eigenvalues(2) == doctest::Approx(-0.5).epsilon(1e-10));
  // leading eigenvector of the random walk is constant
  Eigen::VectorXd v0 = spec.eigenvectors.col(0);
  CHECK((v0.array() / v0(0) - 1.0).abs().maxCoeff() < 1e-10);
}

TEST_CASE("diffusion_spectrum satisfies P v = lambda v") {
  Rng rng(67);
  Eigen::MatrixXd samples = random_gaussian(rng, 25, 3);
  Eigen::MatrixXd w = knn_graph(samples, 4, 1.0);
  DiffusionSpectrum spec = diffusion_spectrum(w, 10);
  Eigen::MatrixXd p = w.rowwise().sum().cwiseInverse().asDiagonal() * w;
  for (int j = 0; j < 10; ++j) {
    Eigen::VectorXd v = spec.eigenvectors.col(j);
    CHECK((p * v - spec.eigenvalues(j) * v).norm() <= 1e-8 * v.norm());
  }
  CHECK(spec.eigenvalues(0) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(spec.eigenvalues.minCoeff() >= -1.0 - 1e-10);
  CHECK(spec.eigenvalues.maxCoeff() <= 1.0 + 1e-10);
}

TEST_CASE("disconnected graph raises a vertex-naming error") {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(4, 4);
  w(0, 1) = w(1, 0) = 1.0;  // vertices 2 and 3 isolated
  try {
    diffusion_spectrum(w, 2);
    FAIL("expected NumericalError");
  } catch (const NumericalError& e) {
    CHECK(std::string(e.what()).find("vertex 2") != std::string::npos);
  }
}

TEST_CASE("diffusion_kernel single eigenpair") {
  DiffusionSpectrum spec;
  spec.eigenvalues = Eigen::VectorXd::Constant(1, 1.0);
  spec.eigenvectors = Eigen::MatrixXd::Zero(3, 1);
  spec.eigenvectors(0, 0) = 1.0;
  const double sigma = std::sqrt(2.0);
  SpdMatrix k = diffusion_kernel(spec, sigma);
  Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(3, 3);
  expected(0, 0) = std::exp(-1.0);
  CHECK(rel_error(k.matrix(), regularize(expected).matrix()) < 1e-12);
}

TEST_CASE("diffusion_kernel weights stay in (0, 1] and filter applies") {
  DiffusionSpectrum spec;
  spec.eigenvalues.resize(3);
  spec.eigenvalues << 1.0, 0.4, -0.2;  // negative eigenvalue filtered
  spec.eigenvectors = Eigen::MatrixXd::Identity(4, 3);
  SpdMatrix k = diffusion_kernel(spec, 1.0);
  SymEig e = sym_eig(k.matrix());
  CHECK(e.eigenvalues.maxCoeff() <= 1.0 + 1e-5);
  CHECK(k.matrix()(2, 2) < 1e-5);  // filtered direction only carries eps

  // sigma -> 0: kernel approaches the projector onto the kept span
  SpdMatrix k0 = diffusion_kernel(spec, 1e-8);
  CHECK(k0.matrix()(0, 0) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(k0.matrix()(1, 1) == doctest::Approx(1.0).epsilon(1e-6));

  DiffusionSpectrum dead;
  dead.eigenvalues = Eigen::VectorXd::Constant(1, -0.5);
  dead.eigenvectors = Eigen::MatrixXd::Identity(2, 1);
  CHECK_THROWS_AS(diffusion_kernel(dead, 1.0), NumericalError);
}

TEST_CASE("block_kernel assembles inverse blocks") {
  CHECK(rel_error(
            block_kernel(SpdMatrix::identity(2), SpdMatrix::identity(3))
                .matrix(),
            Eigen::MatrixXd::Identity(5, 5)) < 1e-14);

  SpdMatrix ks(2.0 * Eigen::MatrixXd::Identity(2, 2));
  SpdMatrix kt(4.0 * Eigen::MatrixXd::Identity(1, 1));
  Eigen::VectorXd d(3);
  d << 0.5, 0.5, 0.25;
  CHECK(rel_error(block_kernel(ks, kt).matrix(),
                  Eigen::MatrixXd(d.asDiagonal())) < 1e-14);

  Rng rng(71);
  SpdMatrix a = random_spd(rng, 3);
  SpdMatrix b = random_spd(rng, 4);
  Eigen::MatrixXd blk = Eigen::MatrixXd::Zero(7, 7);
  blk.topLeftCorner(3, 3) = a.matrix();
  blk.bottomRightCorner(4, 4) = b.matrix();
  CHECK(rel_error(block_kernel(a, b).matrix() * blk,
                  Eigen::MatrixXd::Identity(7, 7)) < 1e-9);
}

TEST_CASE("median heuristic bandwidth") {
  Eigen::MatrixXd samples(3, 1);
  samples << 0, 1, 10;  // pairwise distances 1, 9, 10 -> median 9
  CHECK(median_pairwise_distance(samples) == doctest::Approx(9.0));
}
