#include "ski/quadrature.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ski/harmonics.hpp"

namespace ski {

QuadratureRule::QuadratureRule(PointSet pts, Eigen::VectorXd w)
    : points(std::move(pts)), weights(std::move(w)) {
  if (points.size() == 0)
    throw std::invalid_argument("QuadratureRule: empty point set");
  if (weights.size() != static_cast<Eigen::Index>(points.size()))
    throw std::invalid_argument("QuadratureRule: weight count mismatch");
  for (Eigen::Index i = 0; i < weights.size(); ++i)
    if (!std::isfinite(weights[i]))
      throw std::invalid_argument("QuadratureRule: non-finite weight");
}

QuadratureRule QuadratureRule::equal_weight(PointSet pts) {
  const Eigen::Index n = static_cast<Eigen::Index>(pts.size());
  if (n == 0) throw std::invalid_argument("QuadratureRule: empty point set");
  return QuadratureRule(std::move(pts),
                        Eigen::VectorXd::Constant(n, 1.0 / double(n)));
}

std::vector<double> quadrature_residuals(const QuadratureRule& rule, int kmax) {
  if (kmax < 1)
    throw std::invalid_argument("quadrature_residuals: order must be >= 1");
  const int d = rule.points.dim();
  const Eigen::MatrixXd& m = rule.points.mat();
  const Eigen::VectorXd& w = rule.weights;
  const Eigen::Index n = m.rows();
  const double lam = 0.5 * (d - 1);

  // Row sums of the Gegenbauer Gram form, then a serial reduction over rows
  // so the result does not depend on the thread count.
  std::vector<double> acc(static_cast<std::size_t>(n) * kmax, 0.0);
#pragma omp parallel for schedule(dynamic, 8)
  for (Eigen::Index i = 0; i < n; ++i) {
    double* row = acc.data() + static_cast<std::size_t>(i) * kmax;
    for (Eigen::Index j = 0; j < n; ++j) {
      double t = std::clamp(m.row(i).dot(m.row(j)), -1.0, 1.0);
      double ww = w[i] * w[j];
      double pkm2 = 1.0;
      double pkm1 = t;
      row[0] += ww * t;
      for (int k = 2; k <= kmax; ++k) {
        double pk = (2.0 * (k + lam - 1.0) * t * pkm1 - (k - 1.0) * pkm2) /
                    (2.0 * lam + k - 1.0);
        row[k - 1] += ww * pk;
        pkm2 = pkm1;
        pkm1 = pk;
      }
    }
  }
  const double omega = sphere_volume(d);
  std::vector<double> res(static_cast<std::size_t>(kmax), 0.0);
  for (int k = 1; k <= kmax; ++k) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      s += acc[static_cast<std::size_t>(i) * kmax + (k - 1)];
    double z = static_cast<double>(harmonic_dim(d, k));
    res[static_cast<std::size_t>(k - 1)] = std::max(0.0, z / omega * s);
  }
  return res;
}

double quadrature_residual(const QuadratureRule& rule, int k) {
  if (k < 1) throw std::invalid_argument("quadrature_residual: degree must be >= 1");
  return quadrature_residuals(rule, k)[static_cast<std::size_t>(k - 1)];
}

RuleReport verify_rule(const PointSet& pts, const Eigen::VectorXd& weights,
                       int order, double tol) {
  if (order < 1) throw std::invalid_argument("verify_rule: order must be >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("verify_rule: tol must be positive");
  QuadratureRule rule(pts, weights);
  RuleReport rep;
  rep.tol = tol;
  rep.weights_positive = true;
  for (Eigen::Index i = 0; i < weights.size(); ++i)
    if (!(weights[i] > 0.0)) rep.weights_positive = false;
  rep.weight_sum = weights.sum();
  rep.weight_sum_ok = std::abs(rep.weight_sum - 1.0) <= tol;
  rep.residuals = quadrature_residuals(rule, order);
  rep.worst_residual = -1.0;
  for (int k = 1; k <= order; ++k) {
    double r = rep.residuals[static_cast<std::size_t>(k - 1)];
    if (r > rep.worst_residual) {
      rep.worst_residual = r;
      rep.worst_degree = k;
    }
    if (r > tol && rep.first_fail_degree < 0) rep.first_fail_degree = k;
  }
  rep.pass =
      rep.weights_positive && rep.weight_sum_ok && rep.first_fail_degree < 0;
  return rep;
}

std::string rule_report_csv(const RuleReport& report) {
  std::ostringstream out;
  out << "degree,residual,pass\n";
  char buf[64];
  for (std::size_t k = 0; k < report.residuals.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g", report.residuals[k]);
    out << (k + 1) << ',' << buf << ','
        << (report.residuals[k] <= report.tol ? 1 : 0) << '\n';
  }
  return out.str();
}

WeightSolution solve_weights(const PointSet& pts, int order, double tol) {
  if (pts.dim() != 2)
    throw std::invalid_argument("solve_weights: explicit basis requires S^2");
  if (order < 0) throw std::invalid_argument("solve_weights: negative order");
  const Eigen::Index n = static_cast<Eigen::Index>(pts.size());
  if (n == 0) throw std::invalid_argument("solve_weights: empty point set");

  WeightSolution sol;
  Eigen::VectorXd w = Eigen::VectorXd::Constant(n, 1.0 / double(n));
  if (order >= 1) {
    // Moment system: constant row enforcing sum w = 1, then one row per
    // harmonic of degree 1..order that must integrate to zero.
    Eigen::MatrixXd basis = sh_basis_s2(pts, order);
    const Eigen::Index rows = basis.cols();
    Eigen::MatrixXd a(rows, n);
    a.row(0).setOnes();
    for (Eigen::Index r = 1; r < rows; ++r) a.row(r) = basis.col(r).transpose();
    Eigen::VectorXd b = Eigen::VectorXd::Zero(rows);
    b[0] = 1.0;

    // Minimal-norm correction from the current iterate, then clip negatives.
    for (int pass = 0; pass < 20; ++pass) {
      Eigen::VectorXd resid = b - a * w;
      if (resid.norm() < 1e-15) break;
      Eigen::VectorXd delta =
          a.completeOrthogonalDecomposition().solve(resid);
      w += delta;
      bool clipped = false;
      for (Eigen::Index i = 0; i < n; ++i)
        if (w[i] < 0.0) {
          w[i] = 0.0;
          clipped = true;
        }
      if (!clipped) break;
    }
  }

  sol.weights = w;
  bool nonneg = true;
  for (Eigen::Index i = 0; i < n; ++i)
    if (!(w[i] > 0.0)) nonneg = false;
  if (nonneg) {
    sol.report = verify_rule(pts, w, std::max(order, 1), tol);
    if (order == 0) {
      sol.feasible = std::abs(w.sum() - 1.0) <= tol;
      sol.achieved_order = 0;
    } else {
      sol.feasible = sol.report.pass;
      int achieved = 0;
      for (int k = 1; k <= order; ++k) {
        if (sol.report.residuals[static_cast<std::size_t>(k - 1)] > tol) break;
        achieved = k;
      }
      sol.achieved_order = achieved;
    }
  } else {
    // Zero or negative weights survived the projection: report best effort.
    sol.feasible = false;
    sol.report = verify_rule(pts, Eigen::VectorXd::Constant(n, 1.0 / double(n)),
                             std::max(order, 1), tol);
    sol.achieved_order = 0;
  }
  return sol;
}

}  // namespace ski
