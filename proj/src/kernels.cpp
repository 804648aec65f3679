#include "ski/kernels.hpp"

#include <cmath>
#include <stdexcept>

#include "ski/harmonics.hpp"

namespace ski {

double wendland_value(double u) {
  if (u < 0.0) throw std::invalid_argument("wendland_value: negative argument");
  if (u >= 1.0) return 0.0;
  double t = 1.0 - u;
  double t2 = t * t;
  double t4 = t2 * t2;
  return t4 * t4 * (((32.0 * u + 25.0) * u + 8.0) * u + 1.0);
}

KernelSpec KernelSpec::wendland() {
  KernelSpec k;
  k.type_ = KernelType::wendland;
  return k;
}

KernelSpec KernelSpec::gaussian(double sigma) {
  if (!(sigma > 0.0))
    throw std::invalid_argument("KernelSpec::gaussian: sigma must be positive");
  KernelSpec k;
  k.type_ = KernelType::gaussian;
  k.sigma_ = sigma;
  return k;
}

KernelSpec KernelSpec::coefficients(std::vector<double> phi_hat, int dim) {
  if (dim < 1)
    throw std::invalid_argument("KernelSpec::coefficients: dim must be >= 1");
  if (phi_hat.empty())
    throw std::invalid_argument("KernelSpec::coefficients: empty coefficients");
  for (double c : phi_hat)
    if (!(c > 0.0) || !std::isfinite(c))
      throw std::invalid_argument(
          "KernelSpec::coefficients: coefficients must be positive and finite");
  KernelSpec k;
  k.type_ = KernelType::coefficients;
  k.dim_ = dim;
  k.series_.resize(phi_hat.size());
  const double omega = sphere_volume(dim);
  for (std::size_t i = 0; i < phi_hat.size(); ++i)
    k.series_[i] =
        phi_hat[i] * static_cast<double>(harmonic_dim(dim, static_cast<int>(i))) /
        omega;
  k.phi_hat_ = std::move(phi_hat);
  return k;
}

double KernelSpec::eval_dot(double dot) const {
  dot = std::clamp(dot, -1.0, 1.0);
  switch (type_) {
    case KernelType::wendland: {
      double chord = std::sqrt(std::max(0.0, 2.0 - 2.0 * dot));
      return wendland_value(chord);
    }
    case KernelType::gaussian: {
      double chord2 = std::max(0.0, 2.0 - 2.0 * dot);
      return std::exp(-chord2 / (2.0 * sigma_ * sigma_));
    }
    case KernelType::coefficients: {
      // Three-term recurrence over the stored series, fixed order.
      const int kmax = static_cast<int>(series_.size()) - 1;
      const double lam = 0.5 * (dim_ - 1);
      double pkm2 = 1.0;
      double acc = series_[0];
      if (kmax >= 1) {
        double pkm1 = dot;
        acc += series_[1] * pkm1;
        for (int k = 2; k <= kmax; ++k) {
          double pk = (2.0 * (k + lam - 1.0) * dot * pkm1 - (k - 1.0) * pkm2) /
                      (2.0 * lam + k - 1.0);
          acc += series_[static_cast<std::size_t>(k)] * pk;
          pkm2 = pkm1;
          pkm1 = pk;
        }
      }
      return acc;
    }
  }
  return 0.0;
}

void KernelSpec::check_compatible(const PointSet& pts) const {
  if (type_ == KernelType::coefficients && pts.dim() != dim_)
    throw std::invalid_argument(
        "coefficient kernel dimension does not match point set");
}

double kernel_eval(const KernelSpec& k, const Eigen::VectorXd& x,
                   const Eigen::VectorXd& y) {
  if (x.size() != y.size())
    throw std::invalid_argument("kernel_eval: dimension mismatch");
  return k.eval_dot(x.dot(y));
}

KernelMatrix kernel_matrix(const KernelSpec& k, const PointSet& pts) {
  k.check_compatible(pts);
  const Eigen::Index n = pts.mat().rows();
  const Eigen::MatrixXd& m = pts.mat();
  Eigen::MatrixXd g(n, n);
  const double diag = k.diag();
#pragma omp parallel for schedule(dynamic, 16)
  for (Eigen::Index i = 0; i < n; ++i) {
    g(i, i) = diag;
    for (Eigen::Index j = 0; j < i; ++j) {
      double v = k.eval_dot(m.row(i).dot(m.row(j)));
      g(i, j) = v;
      g(j, i) = v;
    }
  }
  return KernelMatrix{std::move(g), k};
}

Eigen::MatrixXd kernel_cross(const KernelSpec& k, const PointSet& a,
                             const PointSet& b) {
  k.check_compatible(a);
  if (a.dim() != b.dim())
    throw std::invalid_argument("kernel_cross: dimension mismatch");
  const Eigen::Index na = a.mat().rows(), nb = b.mat().rows();
  Eigen::MatrixXd g(na, nb);
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < na; ++i)
    for (Eigen::Index j = 0; j < nb; ++j)
      g(i, j) = k.eval_dot(a.mat().row(i).dot(b.mat().row(j)));
  return g;
}

}  // namespace ski
