// Wall-clock comparison of the OpenMP kernels against their serial
// reference twins on synthetic point sets.
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "ski/interpolation.hpp"
#include "ski/kernels.hpp"
#include "ski/quadrature.hpp"
#include "ski/ref.hpp"
#include "ski/sphere.hpp"

namespace {

using Clock = std::chrono::steady_clock;

template <class F>
double time_best_of(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    auto t0 = Clock::now();
    f();
    double s = std::chrono::duration<double>(Clock::now() - t0).count();
    if (s < best) best = s;
  }
  return best;
}

void report(const char* name, double serial, double parallel) {
  std::printf("%-24s serial %8.4f s   parallel %8.4f s   speedup %5.2fx\n",
              name, serial, parallel, serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
  int n = argc > 1 ? std::atoi(argv[1]) : 3000;
  int reps = argc > 2 ? std::atoi(argv[2]) : 3;
  if (n < 16) n = 16;
  std::printf("points %d, best of %d, threads %d\n", n, reps,
              omp_get_max_threads());

  ski::PointSet pts = ski::uniform_sample(2, n, 42);
  ski::PointSet eval_pts = ski::uniform_sample(2, n, 43);
  ski::KernelSpec kernel = ski::KernelSpec::wendland();

  report("pairwise_geodesic",
         time_best_of(reps, [&] { ski::ref::pairwise_geodesic(pts); }),
         time_best_of(reps, [&] { ski::pairwise_geodesic(pts); }));

  report("kernel_matrix",
         time_best_of(reps, [&] { ski::ref::kernel_matrix(kernel, pts); }),
         time_best_of(reps, [&] { ski::kernel_matrix(kernel, pts); }));

  Eigen::VectorXd coeffs = Eigen::VectorXd::LinSpaced(n, -1.0, 1.0);
  ski::Interpolant f(pts, kernel, coeffs, ski::SolveDiagnostics{});
  report("evaluate",
         time_best_of(reps, [&] { ski::ref::evaluate(f, eval_pts); }),
         time_best_of(reps, [&] { ski::evaluate(f, eval_pts); }));

  ski::QuadratureRule rule = ski::QuadratureRule::equal_weight(pts);
  report("quadrature_residuals",
         time_best_of(reps, [&] { ski::ref::quadrature_residuals(rule, 30); }),
         time_best_of(reps, [&] { ski::quadrature_residuals(rule, 30); }));
  return 0;
}
