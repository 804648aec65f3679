// Minimal-norm kernel interpolation and kernel ridge regression: direct
// solves with a Cholesky-first policy, spectral fallback for numerically
// singular Gram matrices, stability diagnostics, and the power function.
#pragma once

#include <Eigen/Dense>

#include "ski/kernels.hpp"
#include "ski/sphere.hpp"

namespace ski {

struct LabeledData {
  PointSet points;
  Eigen::VectorXd values;

  LabeledData(PointSet pts, Eigen::VectorXd y);
};

enum class SolveMethod { cholesky, eigen_pseudoinverse };

struct SolveDiagnostics {
  SolveMethod method = SolveMethod::cholesky;
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  double cond = 0.0;
  // True when sigma_min/sigma_max come from a full eigendecomposition;
  // false when they are power-iteration estimates.
  bool spectrum_exact = true;
  double interpolation_residual = 0.0;  // max |Phi a - y| over the data
  double solve_seconds = 0.0;           // assembly + factorization + solve
};

class Interpolant {
 public:
  Interpolant(PointSet centers, KernelSpec kernel, Eigen::VectorXd coeffs,
              SolveDiagnostics diag);
  const PointSet& centers() const { return centers_; }
  const KernelSpec& kernel() const { return kernel_; }
  const Eigen::VectorXd& coeffs() const { return coeffs_; }
  const SolveDiagnostics& diagnostics() const { return diag_; }

 private:
  PointSet centers_;
  KernelSpec kernel_;
  Eigen::VectorXd coeffs_;
  SolveDiagnostics diag_;
};

struct FitOptions {
  // Exact spectrum costs an extra eigendecomposition on the Cholesky path;
  // switched off it is replaced by deterministic power-iteration estimates.
  bool exact_spectrum = true;
};

// Interpolation coefficients a = Phi^{-1} y.  Cholesky first; if the Gram
// matrix is numerically indefinite, a symmetric-eigendecomposition
// pseudo-inverse with relative cutoff 1e-12 is used and recorded in the
// diagnostics.  Duplicate points are an error.
Interpolant ki_fit(const KernelSpec& kernel, const LabeledData& data,
                   const FitOptions& opt = {});

// Ridge coefficients a = (Phi + lambda N I)^{-1} y, lambda > 0.
Interpolant krr_fit(const KernelSpec& kernel, const LabeledData& data,
                    double lambda, const FitOptions& opt = {});

// Values of the interpolant at the given points; deterministic inner
// summation order over the centers.
Eigen::VectorXd evaluate(const Interpolant& f, const PointSet& at);

// Squared native-space norm a^T Phi a of the fitted function.
double native_norm_sq(const Interpolant& f);

// Power function of a center set: P(x)^2 = phi(1) - k_x^T Phi^{-1} k_x,
// clamped at zero before the square root.  The factorization is cached so
// repeated queries are cheap.
class PowerFunction {
 public:
  PowerFunction(const KernelSpec& kernel, PointSet centers);
  double operator()(const Eigen::VectorXd& x) const;
  Eigen::VectorXd operator()(const PointSet& at) const;
  SolveMethod method() const { return method_; }

 private:
  PointSet centers_;
  KernelSpec kernel_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
  Eigen::MatrixXd pinv_;  // used only on the fallback path
  SolveMethod method_ = SolveMethod::cholesky;
};

struct ConditionReport {
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  double cond = 0.0;  // +inf when sigma_min <= 0 in floating point
};

// Exact extreme eigenvalues of a symmetric Gram matrix.
ConditionReport condition_diagnostics(const Eigen::MatrixXd& gram);
ConditionReport condition_diagnostics(const KernelMatrix& gram);

}  // namespace ski
