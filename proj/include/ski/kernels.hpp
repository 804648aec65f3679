// Positive definite zonal kernels on the sphere: a compactly supported
// Wendland profile on chord distance, a chordal Gaussian, and a kernel
// assembled from an explicit harmonic coefficient sequence.
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "ski/sphere.hpp"

namespace ski {

enum class KernelType { wendland, gaussian, coefficients };

// Wendland radial profile (1-u)_+^8 (32u^3 + 25u^2 + 8u + 1) on u >= 0.
double wendland_value(double u);

class KernelSpec {
 public:
  // Wendland profile evaluated on the chord ||x - y||.
  static KernelSpec wendland();
  // exp(-||x - y||^2 / (2 sigma^2)), sigma > 0.
  static KernelSpec gaussian(double sigma);
  // sum_k phi_hat[k] (Z(d,k)/Omega_d) P_k(x . y); coefficients must be
  // positive and the sphere dimension is fixed at construction.
  static KernelSpec coefficients(std::vector<double> phi_hat, int dim);

  KernelType type() const { return type_; }
  double sigma() const { return sigma_; }
  int coeff_dim() const { return dim_; }
  const std::vector<double>& phi_hat() const { return phi_hat_; }

  // Kernel value from the inner product x . y (clamped to [-1, 1]).
  double eval_dot(double dot) const;
  // Value on the diagonal, phi(x . x).
  double diag() const { return eval_dot(1.0); }
  // Checks a point set is compatible (dimension match for coefficient kernels).
  void check_compatible(const PointSet& pts) const;

 private:
  KernelSpec() = default;
  KernelType type_ = KernelType::wendland;
  double sigma_ = 0.0;
  int dim_ = -1;
  std::vector<double> phi_hat_;
  std::vector<double> series_;  // phi_hat[k] * Z(d,k) / Omega_d
};

// phi(x . y) for two unit vectors.
double kernel_eval(const KernelSpec& k, const Eigen::VectorXd& x,
                   const Eigen::VectorXd& y);

// Symmetric kernel Gram matrix with its provenance.
struct KernelMatrix {
  Eigen::MatrixXd entries;
  KernelSpec kernel;
};

KernelMatrix kernel_matrix(const KernelSpec& k, const PointSet& pts);

// Rectangular cross matrix phi(a_i . b_j), rows over a.
Eigen::MatrixXd kernel_cross(const KernelSpec& k, const PointSet& a,
                             const PointSet& b);

}  // namespace ski
