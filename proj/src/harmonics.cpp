#include "ski/harmonics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ski {

namespace {

// C(n, k) with overflow detection.
std::uint64_t checked_binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;  // exact at every step
    if (r > std::numeric_limits<std::uint64_t>::max())
      throw std::overflow_error("harmonic_dim: count exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(r);
}

}  // namespace

std::uint64_t harmonic_dim(int d, int k) {
  if (d < 1) throw std::invalid_argument("harmonic_dim: d must be >= 1");
  if (k < 0) throw std::invalid_argument("harmonic_dim: k must be >= 0");
  if (k == 0) return 1;
  // dim of degree-k harmonics in R^{d+1}: C(k+d, k) - C(k+d-2, k-2).
  std::uint64_t a = checked_binomial(static_cast<std::uint64_t>(k) + d, k);
  std::uint64_t b =
      k >= 2 ? checked_binomial(static_cast<std::uint64_t>(k) + d - 2, k - 2) : 0;
  return a - b;
}

double sphere_volume(int d) {
  if (d < 1) throw std::invalid_argument("sphere_volume: d must be >= 1");
  const double pi = 3.14159265358979323846264338327950288;
  double half = 0.5 * (d + 1);
  return 2.0 * std::pow(pi, half) / std::tgamma(half);
}

std::vector<double> gegenbauer_all(int d, int kmax, double t) {
  if (d < 1) throw std::invalid_argument("gegenbauer: d must be >= 1");
  if (kmax < 0) throw std::invalid_argument("gegenbauer: degree must be >= 0");
  if (std::abs(t) > 1.0 + 1e-12)
    throw std::invalid_argument("gegenbauer: argument outside [-1, 1]");
  t = std::clamp(t, -1.0, 1.0);
  std::vector<double> p(static_cast<std::size_t>(kmax) + 1);
  p[0] = 1.0;
  if (kmax == 0) return p;
  p[1] = t;
  const double lam = 0.5 * (d - 1);
  for (int k = 2; k <= kmax; ++k) {
    // Normalized so p[k](1) = 1; lam = 0 reduces to Chebyshev, 1/2 to Legendre.
    p[k] = (2.0 * (k + lam - 1.0) * t * p[k - 1] - (k - 1.0) * p[k - 2]) /
           (2.0 * lam + k - 1.0);
  }
  return p;
}

double gegenbauer(int d, int k, double t) { return gegenbauer_all(d, k, t)[k]; }

Eigen::MatrixXd sh_basis_s2(const PointSet& pts, int max_degree) {
  if (pts.dim() != 2)
    throw std::invalid_argument("sh_basis_s2 requires points on S^2");
  if (max_degree < 0)
    throw std::invalid_argument("sh_basis_s2: negative degree");
  const Eigen::Index n = pts.mat().rows();
  const int K = max_degree;
  Eigen::MatrixXd out(n, (K + 1) * (K + 1));
  const double inv_sqrt_4pi = 0.28209479177387814347403972578039;

  // Normalized associated Legendre S_{k,m}, flattened by (k, m).
  auto sidx = [K](int k, int m) { return k * (K + 1) + m; };
  std::vector<double> S(static_cast<std::size_t>((K + 1) * (K + 1)));

  for (Eigen::Index i = 0; i < n; ++i) {
    const double x = pts.mat()(i, 0), y = pts.mat()(i, 1), z = pts.mat()(i, 2);
    const double u = std::clamp(z, -1.0, 1.0);
    const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
    const double phi = std::atan2(y, x);

    S[sidx(0, 0)] = inv_sqrt_4pi;
    for (int m = 1; m <= K; ++m)
      S[sidx(m, m)] =
          s * std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * S[sidx(m - 1, m - 1)];
    for (int m = 0; m < K; ++m)
      S[sidx(m + 1, m)] = u * std::sqrt(2.0 * m + 3.0) * S[sidx(m, m)];
    for (int m = 0; m <= K; ++m)
      for (int k = m + 2; k <= K; ++k) {
        double a = std::sqrt((4.0 * k * k - 1.0) / (double(k) * k - double(m) * m));
        double b = std::sqrt(((k - 1.0) * (k - 1.0) - double(m) * m) /
                             (4.0 * (k - 1.0) * (k - 1.0) - 1.0));
        S[sidx(k, m)] = a * (u * S[sidx(k - 1, m)] - b * S[sidx(k - 2, m)]);
      }

    int col = 0;
    const double sq2 = 1.4142135623730950488016887242097;
    for (int k = 0; k <= K; ++k) {
      out(i, col++) = S[sidx(k, 0)];
      for (int m = 1; m <= k; ++m) {
        out(i, col++) = sq2 * S[sidx(k, m)] * std::cos(m * phi);
        out(i, col++) = sq2 * S[sidx(k, m)] * std::sin(m * phi);
      }
    }
  }
  return out;
}

}  // namespace ski
