// Spherical harmonic counts, sphere volumes, Gegenbauer polynomials
// normalized to 1 at the diagonal, and an explicit real harmonic basis on
// S^2 used for quadrature weight solving.
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "ski/sphere.hpp"

namespace ski {

// Dimension of the space of degree-k spherical harmonics on S^d, exact;
// throws std::overflow_error if the count does not fit in 64 bits.
std::uint64_t harmonic_dim(int d, int k);

// Surface volume of S^d: 2 pi^{(d+1)/2} / Gamma((d+1)/2).
double sphere_volume(int d);

// Gegenbauer polynomial for S^d of degree k at t in [-1, 1], normalized so
// the value at t = 1 is 1.  d = 2 gives Legendre, d = 1 gives Chebyshev.
double gegenbauer(int d, int k, double t);

// All degrees 0..kmax at one argument, one pass of the three-term recurrence.
std::vector<double> gegenbauer_all(int d, int kmax, double t);

// Real spherical harmonics on S^2, orthonormal with respect to the surface
// measure (so the squared sum over one degree at a point is Z(2,k)/(4 pi)).
// Returns an N x (max_degree+1)^2 matrix; columns ordered by degree k, and
// within a degree: m = 0, then (cos, sin) pairs for m = 1..k.
Eigen::MatrixXd sh_basis_s2(const PointSet& pts, int max_degree);

}  // namespace ski
