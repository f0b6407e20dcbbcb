#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gca/spd.hpp"
#include "test_util.hpp"

using namespace gca;
using namespace gca::test;

namespace {

Eigen::MatrixXd diag2(double a, double b) {
  Eigen::Vector2d d(a, b);
  return d.asDiagonal();
}

}  // namespace

TEST_CASE("SpdMatrix construction certifies the spectrum") {
  CHECK_THROWS_AS(SpdMatrix(diag2(1.0, -1.0)), ContractError);
  CHECK_THROWS_AS(SpdMatrix(diag2(1.0, 0.0)), ContractError);
  Eigen::MatrixXd asym(2, 2);
  asym << 1.0, 0.5, -0.5, 1.0;
  CHECK_THROWS_AS(SpdMatrix{asym}, ContractError);
  Eigen::MatrixXd rect(2, 3);
  rect.setOnes();
  CHECK_THROWS_AS(SpdMatrix{rect}, ContractError);

  SpdMatrix ok(diag2(4.0, 1.0));
  CHECK(ok.min_eigenvalue() == doctest::Approx(1.0));
  CHECK(ok.condition_number() == doctest::Approx(4.0));
}

TEST_CASE("sym_eig reconstructs and is orthonormal") {
  Rng rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    SpdMatrix m = random_spd(rng, 2 + rep % 8, 1e5);
    const SymEig& e = m.eig();
    Eigen::MatrixXd recon = e.eigenvectors * e.eigenvalues.asDiagonal() *
                            e.eigenvectors.transpose();
    CHECK(rel_error(recon, m.matrix()) < 1e-10);
    Eigen::MatrixXd vtv = e.eigenvectors.transpose() * e.eigenvectors;
    CHECK((vtv - Eigen::MatrixXd::Identity(m.dim(), m.dim()))
              .cwiseAbs()
              .maxCoeff() < 1e-12);
  }
}

TEST_CASE("spd_pow fixed points and diagonal case") {
  SpdMatrix id = SpdMatrix::identity(3);
  CHECK(rel_error(spd_pow(id, 0.5).matrix(), id.matrix()) < 1e-14);
  CHECK(rel_error(spd_pow(SpdMatrix(diag2(4.0, 9.0)), 0.5).matrix(),
                  diag2(2.0, 3.0)) < 1e-14);

  Rng rng(5);
  for (int rep = 0; rep < 10; ++rep) {
    SpdMatrix m = random_spd(rng, 5);
    CHECK(rel_error(spd_pow(m, 1.0).matrix(), m.matrix()) < 1e-12);
    // p and -p multiply to the identity
    Eigen::MatrixXd prod =
        spd_pow(m, 0.7).matrix() * spd_pow(m, -0.7).matrix();
    CHECK(rel_error(prod, Eigen::MatrixXd::Identity(5, 5)) < 1e-10);
  }
}

TEST_CASE("sharp_mean endpoints, self-geodesic and commuting oracle") {
  Rng rng(7);
  SpdMatrix x = random_spd(rng, 4);
  SpdMatrix y = random_spd(rng, 4);

  CHECK(rel_error(sharp_mean(x, y, 0.0).matrix(), x.matrix()) < 1e-10);
  CHECK(rel_error(sharp_mean(x, y, 1.0).matrix(), y.matrix()) < 1e-10);
  for (double t : {0.0, 0.3, 0.5, 1.0}) {
    CHECK(rel_error(sharp_mean(x, x, t).matrix(), x.matrix()) < 1e-10);
  }

  // commuting diagonal oracle: X^{1-t} Y^t elementwise
  CHECK(rel_error(
            sharp_mean(SpdMatrix(diag2(0.25, 1.0)), SpdMatrix(diag2(9.0, 1.0)),
                       0.5)
                .matrix(),
            diag2(1.5, 1.0)) < 1e-12);

  for (int rep = 0; rep < 20; ++rep) {
    auto [a, b] = random_commuting_pair(rng, 4);
    const double t = rng.uniform();
    Eigen::MatrixXd oracle =
        spd_pow(a, 1.0 - t).matrix() * spd_pow(b, t).matrix();
    CHECK(rel_error(sharp_mean(a, b, t).matrix(), oracle) < 1e-10);
  }
}

TEST_CASE("sharp_mean midpoint is symmetric in its arguments") {
  Rng rng(9);
  for (int rep = 0; rep < 20; ++rep) {
    SpdMatrix x = random_spd(rng, 3 + rep % 5);
    SpdMatrix y = random_spd(rng, x.dim());
    CHECK(rel_error(sharp_mean(x, y, 0.5).matrix(),
                    sharp_mean(y, x, 0.5).matrix()) < 1e-9);
  }
}

TEST_CASE("sharp_mean rejects bad arguments") {
  SpdMatrix a = SpdMatrix::identity(2);
  SpdMatrix b = SpdMatrix::identity(3);
  CHECK_THROWS_AS(sharp_mean(a, b, 0.5), ContractError);
  CHECK_THROWS_AS(sharp_mean(a, a, -0.1), ContractError);
  CHECK_THROWS_AS(sharp_mean(a, a, 1.1), ContractError);
}

TEST_CASE("riccati_solve examples and residual oracle") {
  SpdMatrix id = SpdMatrix::identity(3);
  CHECK(rel_error(riccati_solve(id, id).matrix(), id.matrix()) < 1e-12);

  // commuting oracle: (3/2) * 4 * (3/2) = 9
  SpdMatrix sol =
      riccati_solve(SpdMatrix(diag2(4.0, 1.0)), SpdMatrix(diag2(9.0, 1.0)));
  CHECK(rel_error(sol.matrix(), diag2(1.5, 1.0)) < 1e-12);

  Rng rng(13);
  for (int rep = 0; rep < 50; ++rep) {
    const Eigen::Index dim = 2 + rng.uniform_int(19);
    SpdMatrix a_s = random_spd(rng, dim, 1e6);
    SpdMatrix a_t = random_spd(rng, dim, 1e6);
    SpdMatrix a = riccati_solve(a_s, a_t);
    Eigen::MatrixXd residual =
        a.matrix() * a_s.matrix() * a.matrix() - a_t.matrix();
    CHECK(residual.norm() <= 1e-8 * a_t.matrix().norm());
  }
}

TEST_CASE("riccati_solve rejects near-singular sources") {
  Eigen::MatrixXd bad = diag2(1.0, 1e-13);
  CHECK_THROWS_AS(riccati_solve(SpdMatrix(bad), SpdMatrix::identity(2)),
                  NumericalError);
}

TEST_CASE("riemannian distance examples and invariances") {
  Rng rng(17);
  SpdMatrix x = random_spd(rng, 4);
  CHECK(riemannian_distance_sq(x, x) == doctest::Approx(0.0).epsilon(1e-10));

  const double e2 = std::exp(2.0);
  CHECK(riemannian_distance_sq(SpdMatrix(diag2(e2, 1.0)),
                               SpdMatrix::identity(2)) ==
        doctest::Approx(4.0).epsilon(1e-10));

  for (int rep = 0; rep < 30; ++rep) {
    SpdMatrix a = random_spd(rng, 5);
    SpdMatrix b = random_spd(rng, 5);
    const double d = riemannian_distance_sq(a, b);
    CHECK(d == doctest::Approx(riemannian_distance_sq(b, a)).epsilon(1e-8));
    CHECK(d == doctest::Approx(riemannian_distance_sq(spd_inverse(a),
                                                      spd_inverse(b)))
                   .epsilon(1e-8));
    // congruence invariance
    Eigen::MatrixXd g = random_gaussian(rng, 5, 5);
    if (std::abs(g.determinant()) < 1e-3) continue;
    SpdMatrix ga(g * a.matrix() * g.transpose());
    SpdMatrix gb(g * b.matrix() * g.transpose());
    CHECK(riemannian_distance_sq(ga, gb) == doctest::Approx(d).epsilon(1e-8));
  }
}

TEST_CASE("regularize lifts into the cone") {
  Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(3, 3);
  CHECK(rel_error(regularize(zero, 1e-6).matrix(),
                  1e-6 * Eigen::MatrixXd::Identity(3, 3)) < 1e-14);
  CHECK(rel_error(regularize(Eigen::MatrixXd::Identity(3, 3), 1e-6).matrix(),
                  (1.0 + 1e-6) * Eigen::MatrixXd::Identity(3, 3)) < 1e-14);

  // rank-1 PSD: min eigenvalue lifted to at least eps * scale
  Rng rng(21);
  for (int rep = 0; rep < 10; ++rep) {
    Eigen::VectorXd v = random_gaussian(rng, 4, 1);
    Eigen::MatrixXd rank1 = v * v.transpose();
    SpdMatrix reg = regularize(rank1, 1e-6);
    const double scale = rank1.diagonal().mean();
    CHECK(reg.min_eigenvalue() >= 1e-6 * std::min(scale, 1.0) * 0.999);
    CHECK(reg.min_eigenvalue() > 0.0);
  }

  // indefinite symmetric input still comes out SPD
  SpdMatrix fixed = regularize(diag2(1.0, -2.0), 1e-6);
  CHECK(fixed.min_eigenvalue() > 0.0);
}

TEST_CASE("geodesic midpoint minimizes the trace objective") {
  Rng rng(23);
  for (int rep = 0; rep < 20; ++rep) {
    SpdMatrix a_s = random_spd(rng, 4);
    SpdMatrix a_t = random_spd(rng, 4);
    SpdMatrix star = riccati_solve(a_s, a_t);
    auto omega = [&](const SpdMatrix& a) {
      return (a.matrix() * a_s.matrix()).trace() +
             (spd_inverse(a).matrix() * a_t.matrix()).trace();
    };
    const double best = omega(star);
    for (int probe = 0; probe < 10; ++probe) {
      Eigen::MatrixXd s = random_gaussian(rng, 4, 4);
      s = 0.5 * (s + s.transpose()).eval();
      Eigen::MatrixXd perturbed =
          star.matrix() + 1e-2 * star.matrix().norm() * s / s.norm();
      perturbed = 0.5 * (perturbed + perturbed.transpose()).eval();
      if (sym_eig(perturbed).eigenvalues(0) <= 0.0) continue;
      CHECK(omega(SpdMatrix(perturbed)) >= best - 1e-12 * std::abs(best));
    }
  }
}

TEST_CASE("analytic omega gradient matches central differences") {
  Rng rng(29);
  for (int rep = 0; rep < 5; ++rep) {
    SpdMatrix a_s = random_spd(rng, 3);
    SpdMatrix a_t = random_spd(rng, 3);
    SpdMatrix a = random_spd(rng, 3);
    auto omega = [&](const Eigen::MatrixXd& m) {
      SpdMatrix sm(m);
      return (sm.matrix() * a_s.matrix()).trace() +
             (spd_inverse(sm).matrix() * a_t.matrix()).trace();
    };
    Eigen::MatrixXd a_inv = spd_inverse(a).matrix();
    Eigen::MatrixXd grad = a_s.matrix() - a_inv * a_t.matrix() * a_inv;
    const double h = 1e-6 * a.matrix().norm();
    for (Eigen::Index i = 0; i < 3; ++i) {
      for (Eigen::Index j = i; j < 3; ++j) {
        Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(3, 3);
        basis(i, j) = basis(j, i) = 1.0;
        const double fd = (omega(a.matrix() + h * basis) -
                           omega(a.matrix() - h * basis)) /
                          (2.0 * h);
        const double analytic = (grad.transpose() * basis).trace();
        CHECK(fd == doctest::Approx(analytic).epsilon(1e-5));
      }
    }
  }
}
