// Simulation drivers: noisy samples of a bump-sum target on the sphere,
// fitted by single-machine or distributed kernel interpolation over
// parameter grids, with per-row CSV output.  Runs are deterministic under
// the master seed; every grid point and repetition owns a derived stream.
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "ski/config.hpp"
#include "ski/kernels.hpp"
#include "ski/sphere.hpp"

namespace ski {

// Shortest round-trippable decimal form (17 significant digits).
std::string fmt_num(double v);

struct ResultTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string to_csv() const;
  void write_csv(const std::string& path) const;
};

// Root-mean-square difference of two equal-length vectors.
double rmse(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

// ---- targets and noise ----------------------------------------------------

// Sum of Wendland bumps of chordal scale c placed at kappa centers.
class TargetFunction {
 public:
  TargetFunction(PointSet centers, double c);
  static TargetFunction spiral_centers(int kappa, double c);
  static TargetFunction from_file(const std::string& path, double c);
  static TargetFunction random_centers(int dim, int kappa, double c,
                                       std::uint64_t seed);
  double operator()(const Eigen::VectorXd& x) const;
  Eigen::VectorXd operator()(const PointSet& at) const;
  const PointSet& centers() const { return centers_; }

 private:
  PointSet centers_;
  double c_;
};

// Centered Gaussian noise of standard deviation delta added to each value.
Eigen::VectorXd add_gaussian_noise(const Eigen::VectorXd& clean, double delta,
                                   Rng& rng);

// Noise with magnitude uniform in [theta*m, m] and random sign.
Eigen::VectorXd bounded_noise(Eigen::Index n, double theta, double m, Rng& rng);

// ---- design catalog -------------------------------------------------------

// Directory searched for design files: explicit argument, else the
// SKI_DESIGN_DIR environment variable, else ./data/designs.
std::string design_directory(const std::string& override_dir = "");

// File of the smallest shipped degree >= t (designs are stored for odd
// degrees; a request for an even t resolves to t+1, which an antipodal
// design of that degree also satisfies).  Throws when nothing qualifies.
std::string find_design_file(const std::string& dir, int t);

PointSet load_design_degree(const std::string& dir, int t);

// ---- experiment configuration --------------------------------------------

struct ExperimentConfig {
  std::string experiment;  // sim1_ki sim1_dki sim2 sim3 sim4 appendix_b
  std::uint64_t seed = 1;
  int repetitions = 30;

  std::string kernel = "wendland";  // wendland | gaussian
  double sigma = 1.0;               // gaussian width

  int kappa = 60;
  double c = 0.5;
  std::string centers = "spiral";  // spiral | file | random
  std::string centers_file;

  std::vector<double> delta{0.5};
  int n_test = 10000;
  std::string design_dir;

  std::vector<int> t_grid;    // sim1_ki
  int base_t = 45;            // design degree behind sims 1b/2/3/4
  std::vector<int> k_grid;    // sim1_dki: numbers of rotated copies
  std::vector<int> m_grid;    // sim2 / sim3 rotation / appendix_b
  int copies = 10;            // rotated copies in sims 3 and 4
  std::string division = "random";  // sim2: random | rotation
  std::vector<double> c0_grid;      // sim3 separation targets
  double cap_factor = 2.0;

  int dki_m = 10;              // sim4 distributed block count
  double lambda_min = 1e-10;   // sim4 ridge grid: powers of 1/2 above this
  std::vector<int> s_star_grid;  // sim4 subsampled fits
  bool include_full_ki = true;   // sim4 single-machine baseline rows

  int dim = 2;                  // appendix_b sphere dimension
  std::vector<int> n_train_grid;  // appendix_b sample-size sweep
  int sigma_count = 20;
  double sigma_lo = 0.1, sigma_hi = 100.0;

  // estimate: deterministic power-iteration bounds on the Gram spectrum;
  // exact: full eigendecomposition (slower, used for small studies).
  std::string diagnostics = "estimate";
};

ExperimentConfig parse_experiment_config(KvConfig& cfg);

// Dispatch on cfg.experiment.
ResultTable run_experiment(const ExperimentConfig& cfg);

ResultTable run_sim1_ki(const ExperimentConfig& cfg);
ResultTable run_sim1_dki(const ExperimentConfig& cfg);
ResultTable run_sim2(const ExperimentConfig& cfg);
ResultTable run_sim3(const ExperimentConfig& cfg);
ResultTable run_sim4(const ExperimentConfig& cfg);
ResultTable run_appendix_b(const ExperimentConfig& cfg);

}  // namespace ski
