#include "oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace oracle {

double geodesic(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  double dot = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) dot += x[i] * y[i];
  if (dot > 1.0) dot = 1.0;
  if (dot < -1.0) dot = -1.0;
  return std::acos(dot);
}

double separation(const ski::PointSet& pts) {
  const Eigen::MatrixXd& m = pts.mat();
  double best = 1e300;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = i + 1; j < m.rows(); ++j) {
      double d = geodesic(m.row(i), m.row(j));
      if (d < best) best = d;
    }
  return 0.5 * best;
}

double mesh_norm(const ski::PointSet& pts, const ski::PointSet& cand) {
  const Eigen::MatrixXd& m = pts.mat();
  const Eigen::MatrixXd& c = cand.mat();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < c.rows(); ++i) {
    double nearest = 1e300;
    for (Eigen::Index j = 0; j < m.rows(); ++j) {
      double d = geodesic(c.row(i), m.row(j));
      if (d < nearest) nearest = d;
    }
    if (nearest > worst) worst = nearest;
  }
  return worst;
}

Eigen::VectorXd lu_solve(Eigen::MatrixXd a, Eigen::VectorXd b) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n || b.size() != n)
    throw std::invalid_argument("lu_solve: shape mismatch");
  std::vector<Eigen::Index> perm(n);
  for (Eigen::Index i = 0; i < n; ++i) perm[i] = i;
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index piv = col;
    double best = std::fabs(a(col, col));
    for (Eigen::Index r = col + 1; r < n; ++r)
      if (std::fabs(a(r, col)) > best) {
        best = std::fabs(a(r, col));
        piv = r;
      }
    if (best == 0.0) throw std::runtime_error("lu_solve: singular matrix");
    if (piv != col) {
      for (Eigen::Index k = 0; k < n; ++k) std::swap(a(col, k), a(piv, k));
      std::swap(b[col], b[piv]);
    }
    for (Eigen::Index r = col + 1; r < n; ++r) {
      double f = a(r, col) / a(col, col);
      a(r, col) = 0.0;
      for (Eigen::Index k = col + 1; k < n; ++k) a(r, k) -= f * a(col, k);
      b[r] -= f * b[col];
    }
  }
  Eigen::VectorXd x(n);
  for (Eigen::Index r = n - 1; r >= 0; --r) {
    double s = b[r];
    for (Eigen::Index k = r + 1; k < n; ++k) s -= a(r, k) * x[k];
    x[r] = s / a(r, r);
  }
  return x;
}

double legendre_closed(int k, double t) {
  switch (k) {
    case 0: return 1.0;
    case 1: return t;
    case 2: return (3.0 * t * t - 1.0) / 2.0;
    case 3: return (5.0 * t * t * t - 3.0 * t) / 2.0;
    case 4: return (35.0 * t * t * t * t - 30.0 * t * t + 3.0) / 8.0;
    default: throw std::invalid_argument("legendre_closed: k > 4");
  }
}

double chebyshev(int k, double t) { return std::cos(k * std::acos(t)); }

std::uint64_t harmonic_count(int d, int k) {
  if (k == 0) return 1;
  // (2k+d-1)/(k+d-1) * C(k+d-1, d-1); the running product after each step
  // is itself a binomial coefficient, so every division is exact.
  unsigned __int128 c = 1;
  for (int i = 1; i <= d - 1; ++i) {
    c *= static_cast<unsigned>(k + i);
    c /= static_cast<unsigned>(i);
  }
  c *= static_cast<unsigned>(2 * k + d - 1);
  c /= static_cast<unsigned>(k + d - 1);
  return static_cast<std::uint64_t>(c);
}

ski::PointSet jittered_spiral(int n, ski::Rng& rng, double jitter) {
  Eigen::Matrix3d rot = random_rotation(rng);
  Eigen::MatrixXd pts = ski::spiral_points(n).mat();
  for (Eigen::Index i = 0; i < pts.rows(); ++i) {
    Eigen::Vector3d p = rot * pts.row(i).transpose();
    for (int k = 0; k < 3; ++k) p[k] += jitter * rng.normal();
    pts.row(i) = p.normalized();
  }
  return ski::PointSet(pts);
}

Eigen::Matrix3d random_rotation(ski::Rng& rng) {
  Eigen::Vector3d axis(rng.normal(), rng.normal(), rng.normal());
  while (axis.norm() < 1e-8)
    axis = Eigen::Vector3d(rng.normal(), rng.normal(), rng.normal());
  axis.normalize();
  double angle = rng.uniform(0.0, 2.0 * M_PI);
  Eigen::Matrix3d k;
  k << 0, -axis.z(), axis.y(), axis.z(), 0, -axis.x(), -axis.y(), axis.x(), 0;
  return Eigen::Matrix3d::Identity() + std::sin(angle) * k +
         (1.0 - std::cos(angle)) * k * k;
}

}  // namespace oracle
