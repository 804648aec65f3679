#include "ski/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ski {

namespace {

void normalize_rows(Eigen::MatrixXd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    double n = m.row(i).norm();
    if (!(n > 0.0) || !std::isfinite(n))
      throw std::invalid_argument("point has zero or non-finite norm");
    m.row(i) /= n;
  }
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

SpherePoint::SpherePoint(Eigen::VectorXd coords) : coords_(std::move(coords)) {
  if (coords_.size() < 2)
    throw std::invalid_argument("SpherePoint needs at least 2 coordinates");
  double n = coords_.norm();
  if (!(n > 0.0) || !std::isfinite(n))
    throw std::invalid_argument("SpherePoint has zero or non-finite norm");
  coords_ /= n;
}

PointSet::PointSet(Eigen::MatrixXd pts, bool renormalize) : pts_(std::move(pts)) {
  if (pts_.cols() < 2)
    throw std::invalid_argument("PointSet needs at least 2 coordinates per point");
  if (renormalize) normalize_rows(pts_);
}

PointSet PointSet::empty(int dim) {
  return PointSet(Eigen::MatrixXd(0, dim + 1), false);
}

PointSet PointSet::subset(const std::vector<int>& idx) const {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(idx.size()), pts_.cols());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] < 0 || idx[i] >= pts_.rows())
      throw std::out_of_range("PointSet::subset index out of range");
    out.row(static_cast<Eigen::Index>(i)) = pts_.row(idx[i]);
  }
  return PointSet(std::move(out), false);
}

PointSet PointSet::concat(const PointSet& other) const {
  if (other.dim() != dim())
    throw std::invalid_argument("PointSet::concat dimension mismatch");
  Eigen::MatrixXd out(pts_.rows() + other.pts_.rows(), pts_.cols());
  out.topRows(pts_.rows()) = pts_;
  out.bottomRows(other.pts_.rows()) = other.pts_;
  return PointSet(std::move(out), false);
}

PointSet PointSet::rotated(const Eigen::Matrix3d& rot) const {
  if (dim() != 2)
    throw std::invalid_argument("PointSet::rotated requires d = 2");
  Eigen::MatrixXd out = pts_ * rot.transpose();
  return PointSet(std::move(out), false);
}

// ---- metrics --------------------------------------------------------------

double geodesic_dist(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  if (x.size() != y.size())
    throw std::invalid_argument("geodesic_dist: dimension mismatch");
  double dot = x.dot(y);
  dot = std::clamp(dot, -1.0, 1.0);
  return std::acos(dot);
}

double geodesic_dist(const SpherePoint& x, const SpherePoint& y) {
  return geodesic_dist(x.coords(), y.coords());
}

Eigen::MatrixXd pairwise_geodesic(const PointSet& pts) {
  const Eigen::Index n = pts.mat().rows();
  const Eigen::MatrixXd& m = pts.mat();
  Eigen::MatrixXd d(n, n);
#pragma omp parallel for schedule(dynamic, 16)
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
  const Eigen::Index n = pts.mat().rows();
  if (n < 2)
    throw std::invalid_argument("separation_radius needs at least two points");
  const Eigen::MatrixXd& m = pts.mat();
  std::vector<double> row_min(static_cast<std::size_t>(n),
                              std::numeric_limits<double>::infinity());
#pragma omp parallel for schedule(dynamic, 16)
  for (Eigen::Index i = 1; i < n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < i; ++j) {
      double dot = std::clamp(m.row(i).dot(m.row(j)), -1.0, 1.0);
      best = std::min(best, std::acos(dot));
    }
    row_min[static_cast<std::size_t>(i)] = best;
  }
  double overall = row_min[1];
  for (std::size_t i = 2; i < row_min.size(); ++i)
    overall = std::min(overall, row_min[i]);
  return 0.5 * overall;
}

double mesh_norm_estimate(const PointSet& pts, const PointSet& candidates) {
  if (pts.size() == 0)
    throw std::invalid_argument("mesh_norm_estimate: empty point set");
  if (candidates.size() == 0)
    throw std::invalid_argument("mesh_norm_estimate: empty candidate set");
  if (pts.dim() != candidates.dim())
    throw std::invalid_argument("mesh_norm_estimate: dimension mismatch");
  const Eigen::MatrixXd& m = pts.mat();
  const Eigen::MatrixXd& c = candidates.mat();
  const Eigen::Index nc = c.rows();
  std::vector<double> cand_min(static_cast<std::size_t>(nc));
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < nc; ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < m.rows(); ++j) {
      double dot = std::clamp(c.row(i).dot(m.row(j)), -1.0, 1.0);
      best = std::min(best, std::acos(dot));
    }
    cand_min[static_cast<std::size_t>(i)] = best;
  }
  double h = cand_min[0];
  for (std::size_t i = 1; i < cand_min.size(); ++i) h = std::max(h, cand_min[i]);
  return h;
}

QualityMetrics quality_metrics(const PointSet& pts, const PointSet& candidates) {
  QualityMetrics q;
  q.count = pts.size();
  q.separation = separation_radius(pts);
  q.mesh_norm = mesh_norm_estimate(pts, candidates);
  q.mesh_ratio = q.mesh_norm / q.separation;
  return q;
}

QualityMetrics quality_metrics(const PointSet& pts) {
  const int n_cand = static_cast<int>(10 * pts.size());
  if (pts.dim() == 2) return quality_metrics(pts, spiral_points(n_cand));
  return quality_metrics(pts, uniform_sample(pts.dim(), n_cand, 0x5ca1ab1eULL));
}

// ---- generators -----------------------------------------------------------

PointSet spiral_points(int n) {
  if (n < 1) throw std::invalid_argument("spiral_points: n must be positive");
  Eigen::MatrixXd m(n, 3);
  const double scale = 1.8 * std::sqrt(static_cast<double>(n));
  for (int j = 1; j <= n; ++j) {
    double alpha = std::acos(1.0 - (2.0 * j - 1.0) / n);
    double beta = std::fmod(scale * alpha, kTwoPi);
    m(j - 1, 0) = std::sin(alpha) * std::cos(beta);
    m(j - 1, 1) = std::sin(alpha) * std::sin(beta);
    m(j - 1, 2) = std::cos(alpha);
  }
  return PointSet(std::move(m), false);
}

PointSet uniform_sample(int dim, int n, Rng& rng) {
  if (dim < 1) throw std::invalid_argument("uniform_sample: dim must be >= 1");
  if (n < 0) throw std::invalid_argument("uniform_sample: negative count");
  Eigen::MatrixXd m(n, dim + 1);
  for (int i = 0; i < n; ++i) {
    double norm2 = 0.0;
    do {
      for (int j = 0; j <= dim; ++j) m(i, j) = rng.normal();
      norm2 = m.row(i).squaredNorm();
    } while (norm2 < 1e-24);
    m.row(i) /= std::sqrt(norm2);
  }
  return PointSet(std::move(m), false);
}

PointSet uniform_sample(int dim, int n, std::uint64_t seed) {
  Rng rng(seed);
  return uniform_sample(dim, n, rng);
}

Eigen::Matrix3d rotation_z(int k) {
  const double a = k * 0.31415926535897932384626433832795;  // k pi / 10
  Eigen::Matrix3d r;
  r << std::cos(a), -std::sin(a), 0.0, std::sin(a), std::cos(a), 0.0, 0.0, 0.0,
      1.0;
  return r;
}

// ---- file ingestion -------------------------------------------------------

PointSet load_design(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open design file: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<double> vals;
    std::string tok;
    while (ls >> tok) {
      char* end = nullptr;
      double v = std::strtod(tok.c_str(), &end);
      if (end == tok.c_str() || *end != '\0' || !std::isfinite(v))
        throw std::runtime_error(path + ": line " + std::to_string(lineno) +
                                 ": malformed number '" + tok + "'");
      vals.push_back(v);
    }
    if (vals.empty()) continue;
    if (vals.size() < 2)
      throw std::runtime_error(path + ": line " + std::to_string(lineno) +
                               ": expected at least 2 coordinates");
    if (width == 0) width = vals.size();
    if (vals.size() != width)
      throw std::runtime_error(path + ": line " + std::to_string(lineno) +
                               ": expected " + std::to_string(width) +
                               " values, got " + std::to_string(vals.size()));
    double norm = 0.0;
    for (double v : vals) norm += v * v;
    norm = std::sqrt(norm);
    if (std::abs(norm - 1.0) > 1e-3)
      throw std::runtime_error(path + ": line " + std::to_string(lineno) +
                               ": row norm " + std::to_string(norm) +
                               " deviates from 1 by more than 1e-3");
    for (double& v : vals) v /= norm;
    rows.push_back(std::move(vals));
  }
  if (rows.empty()) throw std::runtime_error(path + ": no points found");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(width));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < width; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return PointSet(std::move(m), false);
}

}  // namespace ski
