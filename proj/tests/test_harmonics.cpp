#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "ski/harmonics.hpp"
#include "ski/kernels.hpp"
#include "ski/sphere.hpp"
#include "test_helpers.hpp"

TEST_CASE("harmonic space dimensions match direct arithmetic") {
  CHECK(ski::harmonic_dim(2, 0) == 1);
  CHECK(ski::harmonic_dim(2, 3) == 7);
  CHECK(ski::harmonic_dim(3, 1) == 4);
  for (int d : {1, 2, 3, 7, 50})
    for (int k : {0, 1, 2, 5, 12})
      CHECK(ski::harmonic_dim(d, k) == oracle::harmonic_count(d, k));
  CHECK_THROWS_AS(ski::harmonic_dim(200, 100), std::overflow_error);
}

TEST_CASE("sphere volume values") {
  CHECK(ski::sphere_volume(1) == doctest::Approx(2 * M_PI).epsilon(1e-14));
  CHECK(ski::sphere_volume(2) == doctest::Approx(4 * M_PI).epsilon(1e-14));
  CHECK(ski::sphere_volume(3) ==
        doctest::Approx(2 * M_PI * M_PI).epsilon(1e-14));
}

TEST_CASE("normalized gegenbauer agrees with closed forms") {
  CHECK(ski::gegenbauer(2, 1, 0.37) == doctest::Approx(0.37));
  CHECK(ski::gegenbauer(2, 2, 0.0) == doctest::Approx(-0.5));
  for (int d : {1, 2, 3, 6}) {
    CHECK(ski::gegenbauer(d, 0, -0.3) == doctest::Approx(1.0));
    for (int k : {1, 2, 5, 9})
      CHECK(ski::gegenbauer(d, k, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  }
  for (double t : {-0.9, -0.25, 0.1, 0.66}) {
    for (int k = 0; k <= 4; ++k)
      CHECK(ski::gegenbauer(2, k, t) ==
            doctest::Approx(oracle::legendre_closed(k, t)).epsilon(1e-13));
    for (int k = 0; k <= 12; ++k)
      CHECK(ski::gegenbauer(1, k, t) ==
            doctest::Approx(oracle::chebyshev(k, t)).epsilon(1e-12));
  }
}

TEST_CASE("normalized gegenbauer stays bounded up to degree 200") {
  for (int d : {1, 2, 3, 10})
    for (int i = 0; i <= 40; ++i) {
      double t = -1.0 + 2.0 * i / 40.0;
      std::vector<double> vals = ski::gegenbauer_all(d, 200, t);
      REQUIRE(vals.size() == 201);
      for (double v : vals) CHECK(std::fabs(v) <= 1.0 + 1e-9);
    }
  CHECK_THROWS(ski::gegenbauer(2, 3, 1.5));
  CHECK(ski::gegenbauer(2, 3, 1.0 + 1e-13) == doctest::Approx(1.0));
}

TEST_CASE("degree-k basis rows satisfy the addition identity") {
  // sum_l Y_{k,l}(x)^2 = (dim of degree k) / (surface area), any x
  ski::PointSet pts = ski::uniform_sample(2, 20, 8);
  int kmax = 20;
  Eigen::MatrixXd basis = ski::sh_basis_s2(pts, kmax);
  REQUIRE(basis.cols() == (kmax + 1) * (kmax + 1));
  const double omega = ski::sphere_volume(2);
  for (Eigen::Index i = 0; i < basis.rows(); ++i) {
    int col = 0;
    for (int k = 0; k <= kmax; ++k) {
      int width = 2 * k + 1;
      double s = 0.0;
      for (int j = 0; j < width; ++j) s += basis(i, col + j) * basis(i, col + j);
      col += width;
      CHECK(s == doctest::Approx(ski::harmonic_dim(2, k) / omega).epsilon(1e-10));
    }
  }
}

TEST_CASE("wendland profile values") {
  CHECK(ski::wendland_value(0.0) == 1.0);
  CHECK(ski::wendland_value(1.0) == 0.0);
  CHECK(ski::wendland_value(2.5) == 0.0);
  CHECK(ski::wendland_value(0.5) == doctest::Approx(0.0595703125).epsilon(1e-15));
  CHECK_THROWS(ski::wendland_value(-0.1));
}

TEST_CASE("kernel evaluations at special configurations") {
  Eigen::VectorXd x(3), anti(3), orth(3);
  x << 1, 0, 0;
  anti << -1, 0, 0;
  orth << 0, 1, 0;

  ski::KernelSpec w = ski::KernelSpec::wendland();
  CHECK(ski::kernel_eval(w, x, x) == doctest::Approx(1.0));
  CHECK(ski::kernel_eval(w, x, anti) == doctest::Approx(0.0));

  ski::KernelSpec g = ski::KernelSpec::gaussian(1.0);
  CHECK(ski::kernel_eval(g, x, orth) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(ski::kernel_eval(g, x, x) == doctest::Approx(1.0));
}

TEST_CASE("kernel evaluation is symmetric") {
  ski::PointSet pts = ski::uniform_sample(2, 40, 17);
  ski::KernelSpec w = ski::KernelSpec::wendland();
  ski::KernelSpec g = ski::KernelSpec::gaussian(0.7);
  for (int t = 0; t < 200; ++t) {
    ski::Rng rng(300 + t);
    Eigen::VectorXd a = pts.mat().row(static_cast<Eigen::Index>(rng.index(40)));
    Eigen::VectorXd b = pts.mat().row(static_cast<Eigen::Index>(rng.index(40)));
    CHECK(ski::kernel_eval(w, a, b) == ski::kernel_eval(w, b, a));
    CHECK(ski::kernel_eval(g, a, b) == ski::kernel_eval(g, b, a));
  }
}

TEST_CASE("series kernel reproduces its truncated expansion") {
  std::vector<double> coef{1.0, 0.5, 0.25, 0.125};
  ski::KernelSpec k = ski::KernelSpec::coefficients(coef, 2);
  const double omega = ski::sphere_volume(2);
  for (double dot : {-0.8, 0.0, 0.33, 1.0}) {
    double direct = 0.0;
    for (int j = 0; j < 4; ++j)
      direct += coef[static_cast<std::size_t>(j)] *
                (static_cast<double>(ski::harmonic_dim(2, j)) / omega) *
                oracle::legendre_closed(j, dot);
    CHECK(k.eval_dot(dot) == doctest::Approx(direct).epsilon(1e-13));
  }
  CHECK_THROWS(ski::KernelSpec::coefficients({1.0, -0.5}, 2));
}

TEST_CASE("kernel matrices: shape, symmetry, and definiteness") {
  ski::KernelSpec w = ski::KernelSpec::wendland();

  ski::PointSet single = ski::uniform_sample(2, 1, 23);
  ski::KernelMatrix m1 = ski::kernel_matrix(w, single);
  CHECK(m1.entries.rows() == 1);
  CHECK(m1.entries(0, 0) == doctest::Approx(1.0));

  // pairwise chord >= 1 apart: compact support zeroes everything off-diagonal
  Eigen::MatrixXd axes(6, 3);
  axes << 1, 0, 0, -1, 0, 0, 0, 1, 0, 0, -1, 0, 0, 0, 1, 0, 0, -1;
  ski::KernelMatrix id = ski::kernel_matrix(w, ski::PointSet(axes));
  CHECK((id.entries - Eigen::MatrixXd::Identity(6, 6)).norm() ==
        doctest::Approx(0.0));

  ski::PointSet pts = ski::uniform_sample(2, 50, 29);
  ski::KernelMatrix km = ski::kernel_matrix(w, pts);
  CHECK((km.entries - km.entries.transpose()).norm() == doctest::Approx(0.0));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(km.entries);
  CHECK(es.eigenvalues().minCoeff() > 0.0);
  CHECK(es.eigenvalues().minCoeff() > -1e-10 * km.entries.trace());

  ski::KernelMatrix gm = ski::kernel_matrix(ski::KernelSpec::gaussian(0.5), pts);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ges(gm.entries);
  CHECK(ges.eigenvalues().minCoeff() > 0.0);
}

TEST_CASE("cross kernel blocks match entrywise evaluation") {
  ski::PointSet a = ski::uniform_sample(2, 12, 31);
  ski::PointSet b = ski::uniform_sample(2, 7, 37);
  ski::KernelSpec g = ski::KernelSpec::gaussian(0.8);
  Eigen::MatrixXd cross = ski::kernel_cross(g, a, b);
  REQUIRE(cross.rows() == 12);
  REQUIRE(cross.cols() == 7);
  for (Eigen::Index i = 0; i < 12; ++i)
    for (Eigen::Index j = 0; j < 7; ++j)
      CHECK(cross(i, j) == ski::kernel_eval(g, a.mat().row(i), b.mat().row(j)));
}

TEST_CASE("dimension checks for the series kernel") {
  ski::KernelSpec k = ski::KernelSpec::coefficients({1.0, 0.5}, 3);
  ski::PointSet wrong = ski::uniform_sample(2, 5, 41);
  CHECK_THROWS(ski::kernel_matrix(k, wrong));
}
