// Single-threaded reference implementations of the parallel kernels.
// Plain loops, no pragmas: tests compare these bit for bit against the
// OpenMP versions, and the benchmark tool measures the speedup.
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "ski/interpolation.hpp"
#include "ski/kernels.hpp"
#include "ski/quadrature.hpp"
#include "ski/sphere.hpp"

namespace ski::ref {

Eigen::MatrixXd pairwise_geodesic(const PointSet& pts);
double separation_radius(const PointSet& pts);
double mesh_norm_estimate(const PointSet& pts, const PointSet& candidates);
Eigen::MatrixXd kernel_matrix(const KernelSpec& k, const PointSet& pts);
Eigen::VectorXd evaluate(const Interpolant& f, const PointSet& at);
std::vector<double> quadrature_residuals(const QuadratureRule& rule, int kmax);

}  // namespace ski::ref
