// Points on the unit sphere S^d embedded in R^{d+1}: containers, geodesic
// metrics (separation radius, mesh norm, mesh ratio), deterministic point
// generators, and design-file ingestion.
#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "ski/rng.hpp"

namespace ski {

// Single unit vector in R^{d+1}; renormalized on construction.
class SpherePoint {
 public:
  explicit SpherePoint(Eigen::VectorXd coords);
  int dim() const { return static_cast<int>(coords_.size()) - 1; }
  const Eigen::VectorXd& coords() const { return coords_; }

 private:
  Eigen::VectorXd coords_;
};

// Ordered list of points with a common sphere dimension, stored as rows.
class PointSet {
 public:
  // Rows are points in R^{d+1}; renormalized unless told otherwise.
  explicit PointSet(Eigen::MatrixXd pts, bool renormalize = true);
  static PointSet empty(int dim);

  int dim() const { return static_cast<int>(pts_.cols()) - 1; }
  std::size_t size() const { return static_cast<std::size_t>(pts_.rows()); }
  const Eigen::MatrixXd& mat() const { return pts_; }
  Eigen::VectorXd point(std::size_t i) const { return pts_.row(i); }

  PointSet subset(const std::vector<int>& idx) const;
  PointSet concat(const PointSet& other) const;
  PointSet rotated(const Eigen::Matrix3d& rot) const;  // d = 2 only

 private:
  Eigen::MatrixXd pts_;
};

// ---- metrics --------------------------------------------------------------

// Geodesic distance arccos(x . y), inputs assumed unit; dot clamped to [-1,1].
double geodesic_dist(const Eigen::VectorXd& x, const Eigen::VectorXd& y);
double geodesic_dist(const SpherePoint& x, const SpherePoint& y);

// Full pairwise geodesic distance matrix; zero diagonal, symmetric.
Eigen::MatrixXd pairwise_geodesic(const PointSet& pts);

// Half the minimal pairwise geodesic distance; needs at least two points.
double separation_radius(const PointSet& pts);

/// Covering estimate: max over candidates of the distance to the nearest
// point of `pts`.  A candidate-level estimate, not the exact supremum.
double mesh_norm_estimate(const PointSet& pts, const PointSet& candidates);

struct QualityMetrics {
  double separation = 0.0;
  double mesh_norm = 0.0;
  double mesh_ratio = 0.0;  // mesh_norm / separation
  std::size_t count = 0;
};

QualityMetrics quality_metrics(const PointSet& pts, const PointSet& candidates);
/// Default candidates: spiral_points(10 |pts|) on S^2, uniform_sample elsewhere.
QualityMetrics quality_metrics(const PointSet& pts);

// ---- generators -----------------------------------------------------------

// Spiral on S^2: alpha_j = arccos(1 - (2j-1)/n), beta_j = 1.8 sqrt(n) alpha_j
// wrapped mod 2 pi, j = 1..n.
PointSet spiral_points(int n);

// n i.i.d. uniform points on S^d via normalized Gaussian coordinates.
PointSet uniform_sample(int dim, int n, Rng& rng);
PointSet uniform_sample(int dim, int n, std::uint64_t seed);

// Rotation about the z axis by angle k pi / 10.
Eigen::Matrix3d rotation_z(int k);

// ---- file ingestion -------------------------------------------------------

// Reads one point per line, d+1 whitespace-separated reals; blank lines and
// '#' comments ignored.  Rows whose norm deviates from 1 by more than 1e-3
// are rejected; accepted rows are renormalized.  Parse and validation errors
// carry the 1-based line number.
PointSet load_design(const std::string& path);

}  // namespace ski
