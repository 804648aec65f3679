// Quadrature rules on the sphere under the probability normalization
// (weights sum to 1): per-degree exactness residuals, rule verification
// reports, and least-squares weight solving on S^2.
#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "ski/sphere.hpp"

namespace ski {

struct QuadratureRule {
  PointSet points;
  Eigen::VectorXd weights;

  QuadratureRule(PointSet pts, Eigen::VectorXd w);
  static QuadratureRule equal_weight(PointSet pts);
};

// Degree-k exactness residual
//   r_k = (Z(d,k)/Omega_d) sum_{i,j} w_i w_j P_k(x_i . x_j),
// a nonnegative quadratic form that vanishes exactly when the rule
// integrates every degree-k harmonic to zero.
double quadrature_residual(const QuadratureRule& rule, int k);

// Residuals for k = 1..kmax in one pass over the point pairs.
std::vector<double> quadrature_residuals(const QuadratureRule& rule, int kmax);

struct RuleReport {
  bool pass = false;
  bool weights_positive = false;
  double weight_sum = 0.0;
  bool weight_sum_ok = false;
  double tol = 0.0;
  std::vector<double> residuals;  // residuals[k-1] = r_k, k = 1..order
  double worst_residual = 0.0;
  int worst_degree = 0;
  int first_fail_degree = -1;  // smallest degree whose residual exceeds tol
};

// Checks strict weight positivity, |sum w - 1| <= tol, and r_k <= tol for
// every k = 1..order.
RuleReport verify_rule(const PointSet& pts, const Eigen::VectorXd& weights,
                       int order, double tol);

// CSV serialization: header "degree,residual,pass", one row per degree.
std::string rule_report_csv(const RuleReport& report);

struct WeightSolution {
  bool feasible = false;
  Eigen::VectorXd weights;
  int achieved_order = 0;  // largest degree with all residuals within tol
  RuleReport report;
};

// Attempts nonnegative weights exact to the requested order on S^2 by
// minimal-norm least squares started from uniform weights, alternated with
// projection onto the nonnegative orthant, then verified.  Declaring the
// order infeasible is an ordinary outcome, not an error.
WeightSolution solve_weights(const PointSet& pts, int order, double tol = 1e-9);

}  // namespace ski
