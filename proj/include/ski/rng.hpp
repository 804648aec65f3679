// Deterministic random streams.  Distributions are implemented here rather
// than with std:: distribution objects so that draws are reproducible across
// standard libraries, and streams can be derived hierarchically from a master
// seed (e.g. one independent stream per grid point and repetition).
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace ski {

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace detail

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Stream for (master, a, b, c), e.g. (seed, grid index, repetition).
  static Rng derive(std::uint64_t master, std::uint64_t a = 0,
                    std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t s = master;
    std::uint64_t h = detail::splitmix64(s);
    s ^= a + 0x100000001b3ULL;
    h ^= detail::splitmix64(s);
    s ^= b + 0xcbf29ce484222325ULL;
    h ^= detail::splitmix64(s);
    s ^= c + 0x14650fb0739d0383ULL;
    h ^= detail::splitmix64(s);
    return Rng(h);
  }

  std::uint64_t next_u64() { return eng_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Unbiased integer in [0, n).
  std::size_t index(std::size_t n) {
    if (n == 0) throw std::invalid_argument("Rng::index: empty range");
    std::uint64_t bound = ~std::uint64_t(0) - (~std::uint64_t(0) % n);
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= bound);
    return static_cast<std::size_t>(v % n);
  }

  // Standard normal via Box-Muller; one spare value cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  // Fisher-Yates shuffle of an index-like container.
  template <class Vec>
  void shuffle(Vec& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = index(i);
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace ski
