#include "ski/interpolation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace ski {

namespace {

constexpr double kPinvCutoff = 1e-12;  // relative to the largest eigenvalue

void check_distinct(const PointSet& pts) {
  const Eigen::MatrixXd& m = pts.mat();
  const Eigen::Index n = m.rows();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (m(a, c) < m(b, c)) return true;
      if (m(a, c) > m(b, c)) return false;
    }
    return false;
  });
  for (std::size_t i = 1; i < order.size(); ++i)
    if (m.row(order[i - 1]) == m.row(order[i]))
      throw std::invalid_argument("duplicate interpolation points");
}

// Deterministic power-iteration estimates of the extreme eigenvalues, used
// when the caller declines the exact eigendecomposition.
void estimate_spectrum(const Eigen::MatrixXd& gram,
                       const Eigen::LLT<Eigen::MatrixXd>& llt,
                       SolveDiagnostics& diag) {
  const Eigen::Index n = gram.rows();
  Eigen::VectorXd v = Eigen::VectorXd::Ones(n) / std::sqrt(double(n));
  double lo = 0.0, hi = 0.0;
  for (int it = 0; it < 30; ++it) {
    v = gram * v;
    hi = v.norm();
    if (hi == 0.0) break;
    v /= hi;
  }
  Eigen::VectorXd u = Eigen::VectorXd::Ones(n) / std::sqrt(double(n));
  for (int it = 0; it < 30; ++it) {
    u = llt.solve(u);
    double nrm = u.norm();
    if (nrm == 0.0) break;
    lo = 1.0 / nrm;
    u /= nrm;
  }
  diag.sigma_max = hi;
  diag.sigma_min = lo;
  diag.cond = (lo > 0.0) ? hi / lo : std::numeric_limits<double>::infinity();
  diag.spectrum_exact = false;
}

Eigen::VectorXd solve_system(const Eigen::MatrixXd& gram,
                             const Eigen::VectorXd& rhs,
                             const FitOptions& opt, SolveDiagnostics& diag) {
  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  Eigen::VectorXd coeffs;
  if (llt.info() == Eigen::Success) {
    diag.method = SolveMethod::cholesky;
    coeffs = llt.solve(rhs);
    // One step of iterative refinement with the cached factor.
    Eigen::VectorXd resid = rhs - gram * coeffs;
    coeffs += llt.solve(resid);
    if (opt.exact_spectrum) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram,
                                                        Eigen::EigenvaluesOnly);
      diag.sigma_min = es.eigenvalues().minCoeff();
      diag.sigma_max = es.eigenvalues().maxCoeff();
      diag.cond = (diag.sigma_min > 0.0)
                      ? diag.sigma_max / diag.sigma_min
                      : std::numeric_limits<double>::infinity();
      diag.spectrum_exact = true;
    } else {
      estimate_spectrum(gram, llt, diag);
    }
  } else {
    diag.method = SolveMethod::eigen_pseudoinverse;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
    if (es.info() != Eigen::Success)
      throw std::runtime_error("eigendecomposition failed");
    const Eigen::VectorXd& ev = es.eigenvalues();
    double emax = ev.maxCoeff();
    if (!(emax > 0.0))
      throw std::runtime_error("kernel matrix has no positive spectrum");
    double cut = kPinvCutoff * emax;
    Eigen::VectorXd inv = ev.unaryExpr(
        [cut](double e) { return e > cut ? 1.0 / e : 0.0; });
    coeffs = es.eigenvectors() *
             (inv.asDiagonal() * (es.eigenvectors().transpose() * rhs));
    diag.sigma_min = ev.minCoeff();
    diag.sigma_max = emax;
    diag.cond = (diag.sigma_min > 0.0)
                    ? diag.sigma_max / diag.sigma_min
                    : std::numeric_limits<double>::infinity();
    diag.spectrum_exact = true;
  }
  return coeffs;
}

}  // namespace

LabeledData::LabeledData(PointSet pts, Eigen::VectorXd y)
    : points(std::move(pts)), values(std::move(y)) {
  if (points.size() == 0) throw std::invalid_argument("LabeledData: empty data");
  if (values.size() != static_cast<Eigen::Index>(points.size()))
    throw std::invalid_argument("LabeledData: value count mismatch");
  for (Eigen::Index i = 0; i < values.size(); ++i)
    if (!std::isfinite(values[i]))
      throw std::invalid_argument("LabeledData: non-finite value");
}

Interpolant::Interpolant(PointSet centers, KernelSpec kernel,
                         Eigen::VectorXd coeffs, SolveDiagnostics diag)
    : centers_(std::move(centers)),
      kernel_(std::move(kernel)),
      coeffs_(std::move(coeffs)),
      diag_(diag) {
  if (coeffs_.size() != static_cast<Eigen::Index>(centers_.size()))
    throw std::invalid_argument("Interpolant: coefficient count mismatch");
}

Interpolant ki_fit(const KernelSpec& kernel, const LabeledData& data,
                   const FitOptions& opt) {
  kernel.check_compatible(data.points);
  check_distinct(data.points);
  auto t0 = std::chrono::steady_clock::now();
  KernelMatrix gram = kernel_matrix(kernel, data.points);
  SolveDiagnostics diag;
  Eigen::VectorXd coeffs = solve_system(gram.entries, data.values, opt, diag);
  diag.solve_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  diag.interpolation_residual =
      (gram.entries * coeffs - data.values).cwiseAbs().maxCoeff();
  return Interpolant(data.points, kernel, std::move(coeffs), diag);
}

Interpolant krr_fit(const KernelSpec& kernel, const LabeledData& data,
                    double lambda, const FitOptions& opt) {
  if (!(lambda > 0.0))
    throw std::invalid_argument("krr_fit: lambda must be positive");
  kernel.check_compatible(data.points);
  auto t0 = std::chrono::steady_clock::now();
  KernelMatrix gram = kernel_matrix(kernel, data.points);
  const double n = static_cast<double>(data.points.size());
  Eigen::MatrixXd reg = gram.entries;
  reg.diagonal().array() += lambda * n;
  SolveDiagnostics diag;
  Eigen::VectorXd coeffs = solve_system(reg, data.values, opt, diag);
  diag.solve_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  diag.interpolation_residual =
      (reg * coeffs - data.values).cwiseAbs().maxCoeff();
  return Interpolant(data.points, kernel, std::move(coeffs), diag);
}

Eigen::VectorXd evaluate(const Interpolant& f, const PointSet& at) {
  if (at.dim() != f.centers().dim())
    throw std::invalid_argument("evaluate: dimension mismatch");
  const Eigen::MatrixXd& c = f.centers().mat();
  const Eigen::MatrixXd& x = at.mat();
  const Eigen::VectorXd& a = f.coeffs();
  const KernelSpec& k = f.kernel();
  Eigen::VectorXd out(x.rows());
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    double acc = 0.0;
    for (Eigen::Index j = 0; j < c.rows(); ++j)
      acc += a[j] * k.eval_dot(x.row(i).dot(c.row(j)));
    out[i] = acc;
  }
  return out;
}

double native_norm_sq(const Interpolant& f) {
  KernelMatrix gram = kernel_matrix(f.kernel(), f.centers());
  return f.coeffs().dot(gram.entries * f.coeffs());
}

PowerFunction::PowerFunction(const KernelSpec& kernel, PointSet centers)
    : centers_(std::move(centers)), kernel_(kernel) {
  if (centers_.size() == 0)
    throw std::invalid_argument("PowerFunction: empty center set");
  KernelMatrix gram = kernel_matrix(kernel_, centers_);
  llt_.compute(gram.entries);
  if (llt_.info() != Eigen::Success) {
    method_ = SolveMethod::eigen_pseudoinverse;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram.entries);
    if (es.info() != Eigen::Success)
      throw std::runtime_error("eigendecomposition failed");
    double emax = es.eigenvalues().maxCoeff();
    if (!(emax > 0.0))
      throw std::runtime_error("kernel matrix has no positive spectrum");
    double cut = kPinvCutoff * emax;
    Eigen::VectorXd inv = es.eigenvalues().unaryExpr(
        [cut](double e) { return e > cut ? 1.0 / e : 0.0; });
    pinv_ = es.eigenvectors() * inv.asDiagonal() *
            es.eigenvectors().transpose();
  }
}

double PowerFunction::operator()(const Eigen::VectorXd& x) const {
  const Eigen::MatrixXd& c = centers_.mat();
  if (x.size() != c.cols())
    throw std::invalid_argument("PowerFunction: dimension mismatch");
  Eigen::VectorXd kx(c.rows());
  for (Eigen::Index j = 0; j < c.rows(); ++j)
    kx[j] = kernel_.eval_dot(x.dot(c.row(j)));
  double quad;
  if (method_ == SolveMethod::cholesky)
    quad = kx.dot(llt_.solve(kx));
  else
    quad = kx.dot(pinv_ * kx);
  return std::sqrt(std::max(0.0, kernel_.diag() - quad));
}

Eigen::VectorXd PowerFunction::operator()(const PointSet& at) const {
  Eigen::VectorXd out(at.mat().rows());
  for (Eigen::Index i = 0; i < at.mat().rows(); ++i)
    out[i] = (*this)(Eigen::VectorXd(at.mat().row(i)));
  return out;
}

ConditionReport condition_diagnostics(const Eigen::MatrixXd& gram) {
  if (gram.rows() != gram.cols() || gram.rows() == 0)
    throw std::invalid_argument("condition_diagnostics: not a square matrix");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram,
                                                    Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigendecomposition failed");
  ConditionReport r;
  r.sigma_min = es.eigenvalues().minCoeff();
  r.sigma_max = es.eigenvalues().maxCoeff();
  r.cond = (r.sigma_min > 0.0) ? r.sigma_max / r.sigma_min
                               : std::numeric_limits<double>::infinity();
  return r;
}

ConditionReport condition_diagnostics(const KernelMatrix& gram) {
  return condition_diagnostics(gram.entries);
}

}  // namespace ski
