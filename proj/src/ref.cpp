#include "ski/ref.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ski/harmonics.hpp"

namespace ski::ref {

Eigen::MatrixXd pairwise_geodesic(const PointSet& pts) {
  const Eigen::MatrixXd& m = pts.mat();
  const Eigen::Index n = m.rows();
  Eigen::MatrixXd d(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    d(i, i) = 0.0;
    for (Eigen::Index j = 0; j < i; ++j) {
      double dot = std::clamp(m.row(i).dot(m.row(j)), -1.0, 1.0);
      double v = std::acos(dot);
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  return d;
}

double separation_radius(const PointSet& pts) {
  const Eigen::MatrixXd& m = pts.mat();
  const Eigen::Index n = m.rows();
  if (n < 2)
    throw std::invalid_argument("separation_radius needs at least two points");
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 1; i < n; ++i) {
    double row = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < i; ++j) {
      double dot = std::clamp(m.row(i).dot(m.row(j)), -1.0, 1.0);
      row = std::min(row, std::acos(dot));
    }
    best = std::min(best, row);
  }
  return 0.5 * best;
}

double mesh_norm_estimate(const PointSet& pts, const PointSet& candidates) {
  if (pts.size() == 0 || candidates.size() == 0)
    throw std::invalid_argument("mesh_norm_estimate: empty input");
  if (pts.dim() != candidates.dim())
    throw std::invalid_argument("mesh_norm_estimate: dimension mismatch");
  const Eigen::MatrixXd& m = pts.mat();
  const Eigen::MatrixXd& c = candidates.mat();
  double h = 0.0;
  for (Eigen::Index i = 0; i < c.rows(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < m.rows(); ++j) {
      double dot = std::clamp(c.row(i).dot(m.row(j)), -1.0, 1.0);
      best = std::min(best, std::acos(dot));
    }
    h = std::max(h, best);
  }
  return h;
}

Eigen::MatrixXd kernel_matrix(const KernelSpec& k, const PointSet& pts) {
  k.check_compatible(pts);
  const Eigen::MatrixXd& m = pts.mat();
  const Eigen::Index n = m.rows();
  Eigen::MatrixXd g(n, n);
  const double diag = k.diag();
  for (Eigen::Index i = 0; i < n; ++i) {
    g(i, i) = diag;
    for (Eigen::Index j = 0; j < i; ++j) {
      double v = k.eval_dot(m.row(i).dot(m.row(j)));
      g(i, j) = v;
      g(j, i) = v;
    }
  }
  return g;
}

Eigen::VectorXd evaluate(const Interpolant& f, const PointSet& at) {
  if (at.dim() != f.centers().dim())
    throw std::invalid_argument("evaluate: dimension mismatch");
  const Eigen::MatrixXd& c = f.centers().mat();
  const Eigen::MatrixXd& x = at.mat();
  const Eigen::VectorXd& a = f.coeffs();
  Eigen::VectorXd out(x.rows());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    double acc = 0.0;
    for (Eigen::Index j = 0; j < c.rows(); ++j)
      acc += a[j] * f.kernel().eval_dot(x.row(i).dot(c.row(j)));
    out[i] = acc;
  }
  return out;
}

std::vector<double> quadrature_residuals(const QuadratureRule& rule, int kmax) {
  if (kmax < 1)
    throw std::invalid_argument("quadrature_residuals: order must be >= 1");
  const int d = rule.points.dim();
  const Eigen::MatrixXd& m = rule.points.mat();
  const Eigen::VectorXd& w = rule.weights;
  const Eigen::Index n = m.rows();
  const double lam = 0.5 * (d - 1);
  std::vector<double> acc(static_cast<std::size_t>(n) * kmax, 0.0);
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
    res[static_cast<std::size_t>(k - 1)] =
        std::max(0.0, static_cast<double>(harmonic_dim(d, k)) / omega * s);
  }
  return res;
}

}  // namespace ski::ref
