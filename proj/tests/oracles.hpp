// Independent oracle implementations used to cross-check the library:
// plain-loop geometry, a hand-rolled LU solver, and small closed-form
// polynomial evaluations.  Nothing here calls into ski_core internals
// beyond data containers.
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "ski/sphere.hpp"

namespace oracle {

// Geodesic distance from first principles.
double geodesic(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

// Half the minimum pairwise geodesic distance, direct double loop.
double separation(const ski::PointSet& pts);

// max over candidates of the distance to the nearest point.
double mesh_norm(const ski::PointSet& pts, const ski::PointSet& cand);

// Solves A x = b by Gaussian elimination with partial pivoting, written
// against raw loops (no factorization objects).  Throws on exact zero pivot.
Eigen::VectorXd lu_solve(Eigen::MatrixXd a, Eigen::VectorXd b);

// Closed-form Legendre polynomials for k <= 4 (three-space zonal case).
double legendre_closed(int k, double t);

// Chebyshev form of the circle (d = 1) normalized Gegenbauer polynomial.
double chebyshev(int k, double t);

// Dimension of degree-k spherical harmonics on S^d by direct product
// arithmetic: (2k+d-1)/k * C(k+d-2, k-1) for k >= 1, 1 for k = 0.
std::uint64_t harmonic_count(int d, int k);

// Spiral nodes rotated by a random rotation and jittered on the sphere;
// keeps quasi-uniform separation so Gram matrices stay Cholesky-friendly.
ski::PointSet jittered_spiral(int n, ski::Rng& rng, double jitter = 0.02);

// Random 3x3 rotation built from an axis-angle draw (Rodrigues formula).
Eigen::Matrix3d random_rotation(ski::Rng& rng);

}  // namespace oracle
