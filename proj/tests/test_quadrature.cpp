#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "ski/harmonics.hpp"
#include "ski/quadrature.hpp"
#include "ski/sphere.hpp"
#include "test_helpers.hpp"

using ski::PointSet;
using ski::QuadratureRule;

TEST_CASE("one-point rule misses degree one by the dimension ratio") {
  Eigen::MatrixXd m(1, 3);
  m << 0, 0, 1;
  QuadratureRule rule(PointSet(m), Eigen::VectorXd::Ones(1));
  // r_1 = Z(2,1)/Omega_2 * P_1(1) = 3 / (4 pi)
  CHECK(ski::quadrature_residual(rule, 1) ==
        doctest::Approx(3.0 / (4.0 * M_PI)).epsilon(1e-14));
}

TEST_CASE("antipodal pair cancels every odd degree") {
  Eigen::MatrixXd m(2, 3);
  m << 0, 0, 1, 0, 0, -1;
  QuadratureRule rule = QuadratureRule::equal_weight(PointSet(m));
  for (int k : {1, 3, 5, 11})
    CHECK(ski::quadrature_residual(rule, k) == doctest::Approx(0.0));
  CHECK(ski::quadrature_residual(rule, 2) > 1e-3);
}

TEST_CASE("loaded order-25 point set is exact through its order") {
  PointSet design =
      ski::load_design(design_dir() + "/design_s2_t025_n00328.txt");
  QuadratureRule rule = QuadratureRule::equal_weight(design);
  std::vector<double> res = ski::quadrature_residuals(rule, 27);
  for (int k = 1; k <= 25; ++k) {
    CHECK(res[static_cast<std::size_t>(k - 1)] >= 0.0);
    CHECK(res[static_cast<std::size_t>(k - 1)] <= 1e-10);
  }
  // first inexact degree, frozen from an independent scan of the file
  CHECK(res[25] == doctest::Approx(0.0318097574).epsilon(1e-6));
}

TEST_CASE("residuals are invariant under a global rotation") {
  ski::Rng rng(61);
  PointSet design =
      ski::load_design(design_dir() + "/design_s2_t009_n00050.txt");
  Eigen::Matrix3d rot = oracle::random_rotation(rng);
  QuadratureRule a = QuadratureRule::equal_weight(design);
  QuadratureRule b = QuadratureRule::equal_weight(design.rotated(rot));
  std::vector<double> ra = ski::quadrature_residuals(a, 15);
  std::vector<double> rb = ski::quadrature_residuals(b, 15);
  for (std::size_t i = 0; i < ra.size(); ++i)
    CHECK(ra[i] == doctest::Approx(rb[i]).epsilon(1e-10));
}

TEST_CASE("residual equals the harmonic-moment norm") {
  // r_k computed from pairwise polynomial sums must equal the squared norm
  // of the weighted basis column sums; checked on a non-design set.
  PointSet pts = ski::uniform_sample(2, 30, 90);
  Eigen::VectorXd w = Eigen::VectorXd::Constant(30, 1.0 / 30.0);
  QuadratureRule rule(pts, w);
  int kmax = 8;
  Eigen::MatrixXd basis = ski::sh_basis_s2(pts, kmax);
  Eigen::RowVectorXd moments = w.transpose() * basis;
  int col = 1;
  for (int k = 1; k <= kmax; ++k) {
    double norm_sq = 0.0;
    for (int j = 0; j < 2 * k + 1; ++j)
      norm_sq += moments[col + j] * moments[col + j];
    col += 2 * k + 1;
    CHECK(ski::quadrature_residual(rule, k) ==
          doctest::Approx(norm_sq).epsilon(1e-10));
  }
}

TEST_CASE("rule verification passes at the design order, fails two above") {
  PointSet design =
      ski::load_design(design_dir() + "/design_s2_t025_n00328.txt");
  Eigen::VectorXd w = Eigen::VectorXd::Constant(
      static_cast<Eigen::Index>(design.size()), 1.0 / design.size());

  ski::RuleReport ok = ski::verify_rule(design, w, 25, 1e-10);
  CHECK(ok.pass);
  CHECK(ok.weights_positive);
  CHECK(ok.weight_sum_ok);
  CHECK(ok.first_fail_degree == -1);

  ski::RuleReport bad = ski::verify_rule(design, w, 27, 1e-10);
  CHECK_FALSE(bad.pass);
  CHECK(bad.first_fail_degree == 26);
  CHECK(bad.worst_degree == 26);
  CHECK(bad.worst_residual > 1e-6);

  Eigen::VectorXd neg = w;
  neg[0] = -neg[0];
  ski::RuleReport nr = ski::verify_rule(design, neg, 5, 1e-10);
  CHECK_FALSE(nr.weights_positive);
  CHECK_FALSE(nr.pass);
}

TEST_CASE("report serializes one row per degree") {
  Eigen::MatrixXd m(2, 3);
  m << 0, 0, 1, 0, 0, -1;
  PointSet pts(m);
  Eigen::VectorXd w = Eigen::VectorXd::Constant(2, 0.5);
  std::string csv = ski::rule_report_csv(ski::verify_rule(pts, w, 3, 1e-9));
  CHECK(csv.rfind("degree,residual,pass\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}

TEST_CASE("weight solving recovers near-equal weights on a design") {
  PointSet design =
      ski::load_design(design_dir() + "/design_s2_t009_n00050.txt");
  ski::WeightSolution sol = ski::solve_weights(design, 9);
  REQUIRE(sol.feasible);
  CHECK(sol.achieved_order >= 9);
  double equal = 1.0 / static_cast<double>(design.size());
  for (Eigen::Index i = 0; i < sol.weights.size(); ++i)
    CHECK(std::fabs(sol.weights[i] - equal) <= 1e-8);
}

TEST_CASE("weight solving trivial and infeasible cases") {
  Eigen::MatrixXd one(1, 3);
  one << 1, 0, 0;
  ski::WeightSolution s0 = ski::solve_weights(PointSet(one), 0);
  REQUIRE(s0.feasible);
  CHECK(s0.weights[0] == doctest::Approx(1.0));

  // 4 points cannot satisfy the 16 moment constraints of order 3
  PointSet four = ski::uniform_sample(2, 4, 71);
  ski::WeightSolution s3 = ski::solve_weights(four, 3);
  CHECK_FALSE(s3.feasible);
}

TEST_CASE("rule construction validates input") {
  Eigen::MatrixXd m(2, 3);
  m << 0, 0, 1, 0, 0, -1;
  CHECK_THROWS(QuadratureRule(PointSet(m), Eigen::VectorXd::Ones(3)));
}
