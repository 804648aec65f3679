#include "ski/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <regex>
#include <stdexcept>

#include "ski/dki.hpp"
#include "ski/interpolation.hpp"
#include "ski/partition.hpp"

namespace ski {

namespace {

using Row = std::vector<std::string>;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Deterministic task fan-out: each task fills its own slot, slots are
// concatenated in task order afterwards.
std::vector<Row> run_tasks(std::size_t n,
                           const std::function<std::vector<Row>(std::size_t)>& fn,
                           bool parallel) {
  std::vector<std::vector<Row>> slots(n);
  std::vector<std::string> errors(n);
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < static_cast<long>(n); ++i) {
      try {
        slots[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
      } catch (const std::exception& e) {
        errors[static_cast<std::size_t>(i)] = e.what();
      }
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      try {
        slots[i] = fn(i);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!errors[i].empty())
      throw std::runtime_error("task " + std::to_string(i) + ": " + errors[i]);
  std::vector<Row> rows;
  for (auto& s : slots)
    for (auto& r : s) rows.push_back(std::move(r));
  return rows;
}

std::string method_name(SolveMethod m) {
  return m == SolveMethod::cholesky ? "cholesky" : "pseudoinverse";
}

int fallback_count(const DkiModel& model) {
  int n = 0;
  for (const auto& f : model.locals)
    if (f.diagnostics().method == SolveMethod::eigen_pseudoinverse) ++n;
  return n;
}

KernelSpec make_kernel(const ExperimentConfig& cfg, double sigma_override = 0) {
  if (cfg.kernel == "wendland") return KernelSpec::wendland();
  if (cfg.kernel == "gaussian")
    return KernelSpec::gaussian(sigma_override > 0 ? sigma_override : cfg.sigma);
  throw std::runtime_error("unknown kernel '" + cfg.kernel + "'");
}

TargetFunction make_target(const ExperimentConfig& cfg) {
  if (cfg.centers == "spiral") {
    if (cfg.dim != 2)
      throw std::runtime_error("spiral target centers require d = 2");
    return TargetFunction::spiral_centers(cfg.kappa, cfg.c);
  }
  if (cfg.centers == "file")
    return TargetFunction::from_file(cfg.centers_file, cfg.c);
  if (cfg.centers == "random")
    return TargetFunction::random_centers(cfg.dim, cfg.kappa, cfg.c,
                                          Rng::derive(cfg.seed, 0xce27).next_u64());
  throw std::runtime_error("unknown centers source '" + cfg.centers + "'");
}

PointSet make_test_points(const ExperimentConfig& cfg) {
  if (cfg.dim == 2) return spiral_points(cfg.n_test);
  return uniform_sample(cfg.dim, cfg.n_test,
                        Rng::derive(cfg.seed, 0x7e57).next_u64());
}

FitOptions fit_options(const ExperimentConfig& cfg) {
  FitOptions opt;
  opt.exact_spectrum = cfg.diagnostics == "exact";
  return opt;
}

// Union of the design rotated k times about the z axis, copy j rotated by
// angle j pi / 10; one consecutive index range per copy.
PointSet rotated_union(const PointSet& design, int copies) {
  PointSet out = design.rotated(rotation_z(1));
  for (int j = 2; j <= copies; ++j)
    out = out.concat(design.rotated(rotation_z(j)));
  return out;
}

Partition consecutive_blocks(std::size_t total, int m) {
  Partition p;
  p.parent_size = total;
  p.method = "rotation";
  p.params.m = m;
  const std::size_t len = total / static_cast<std::size_t>(m);
  for (int j = 0; j < m; ++j) {
    std::vector<int> idx(len);
    for (std::size_t i = 0; i < len; ++i)
      idx[i] = static_cast<int>(static_cast<std::size_t>(j) * len + i);
    p.blocks.push_back(std::move(idx));
  }
  return p;
}

}  // namespace

std::string fmt_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string ResultTable::to_csv() const {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out += ',';
    out += header[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += row[i];
    }
    out += '\n';
  }
  return out;
}

void ResultTable::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write CSV: " + path);
  out << to_csv();
}

double rmse(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size() || a.size() == 0)
    throw std::invalid_argument("rmse: length mismatch or empty");
  return std::sqrt((a - b).squaredNorm() / static_cast<double>(a.size()));
}

// ---- targets and noise ----------------------------------------------------

TargetFunction::TargetFunction(PointSet centers, double c)
    : centers_(std::move(centers)), c_(c) {
  if (!(c_ > 0.0)) throw std::invalid_argument("TargetFunction: c must be positive");
  if (centers_.size() == 0)
    throw std::invalid_argument("TargetFunction: no centers");
}

TargetFunction TargetFunction::spiral_centers(int kappa, double c) {
  return TargetFunction(spiral_points(kappa), c);
}

TargetFunction TargetFunction::from_file(const std::string& path, double c) {
  return TargetFunction(load_design(path), c);
}

TargetFunction TargetFunction::random_centers(int dim, int kappa, double c,
                                              std::uint64_t seed) {
  return TargetFunction(uniform_sample(dim, kappa, seed), c);
}

double TargetFunction::operator()(const Eigen::VectorXd& x) const {
  const Eigen::MatrixXd& z = centers_.mat();
  if (x.size() != z.cols())
    throw std::invalid_argument("TargetFunction: dimension mismatch");
  double acc = 0.0;
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    double chord2 = std::max(0.0, 2.0 - 2.0 * x.dot(z.row(i)));
    acc += wendland_value(std::sqrt(chord2) / c_);
  }
  return acc;
}

Eigen::VectorXd TargetFunction::operator()(const PointSet& at) const {
  Eigen::VectorXd out(at.mat().rows());
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < at.mat().rows(); ++i)
    out[i] = (*this)(Eigen::VectorXd(at.mat().row(i)));
  return out;
}

Eigen::VectorXd add_gaussian_noise(const Eigen::VectorXd& clean, double delta,
                                   Rng& rng) {
  if (delta < 0.0) throw std::invalid_argument("add_gaussian_noise: negative delta");
  Eigen::VectorXd out = clean;
  for (Eigen::Index i = 0; i < out.size(); ++i) out[i] += delta * rng.normal();
  return out;
}

Eigen::VectorXd bounded_noise(Eigen::Index n, double theta, double m, Rng& rng) {
  if (!(m > 0.0) || !(theta >= 0.0) || !(theta <= 1.0))
    throw std::invalid_argument("bounded_noise: need 0 <= theta <= 1 < m scale");
  Eigen::VectorXd out(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double mag = rng.uniform(theta * m, m);
    out[i] = rng.uniform() < 0.5 ? mag : -mag;
  }
  return out;
}

// ---- design catalog -------------------------------------------------------

std::string design_directory(const std::string& override_dir) {
  if (!override_dir.empty()) return override_dir;
  if (const char* env = std::getenv("SKI_DESIGN_DIR"); env && *env) return env;
  return "data/designs";
}

std::string find_design_file(const std::string& dir, int t) {
  if (t < 0) throw std::invalid_argument("find_design_file: negative degree");
  static const std::regex pat(R"(design_s2_t(\d+)_n(\d+)\.txt)");
  int best_t = -1;
  long best_n = -1;
  std::string best;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    std::smatch m;
    std::string name = entry.path().filename().string();
    if (!std::regex_match(name, m, pat)) continue;
    int ft = std::stoi(m[1]);
    long fn = std::stol(m[2]);
    if (ft < t) continue;
    if (best_t < 0 || ft < best_t || (ft == best_t && fn < best_n)) {
      best_t = ft;
      best_n = fn;
      best = entry.path().string();
    }
  }
  if (ec)
    throw std::runtime_error("cannot read design directory '" + dir +
                             "': " + ec.message());
  if (best.empty())
    throw std::runtime_error("no design of degree >= " + std::to_string(t) +
                             " under '" + dir + "'");
  return best;
}

PointSet load_design_degree(const std::string& dir, int t) {
  return load_design(find_design_file(dir, t));
}

// ---- configuration --------------------------------------------------------

ExperimentConfig parse_experiment_config(KvConfig& cfg) {
  ExperimentConfig ec;
  ec.experiment = cfg.get_string("experiment");
  const bool s1k = ec.experiment == "sim1_ki";
  const bool s1d = ec.experiment == "sim1_dki";
  const bool s2 = ec.experiment == "sim2";
  const bool s3 = ec.experiment == "sim3";
  const bool s4 = ec.experiment == "sim4";
  const bool apb = ec.experiment == "appendix_b";
  if (!s1k && !s1d && !s2 && !s3 && !s4 && !apb)
    throw std::runtime_error("unknown experiment '" + ec.experiment + "'");

  ec.seed = cfg.get_u64("seed", 1);
  ec.repetitions = cfg.get_int("repetitions", 30);
  if (ec.repetitions < 1) throw std::runtime_error("repetitions must be >= 1");

  ec.kernel = cfg.get_string("kernel", apb ? "gaussian" : "wendland");
  ec.sigma = cfg.get_double("sigma", 1.0);
  ec.dim = cfg.get_int("d", apb ? 50 : 2);
  if (ec.dim < 1) throw std::runtime_error("d must be >= 1");

  ec.kappa = cfg.get_int("kappa", 60);
  ec.c = cfg.get_double("c", apb ? 2.0 : 0.5);
  ec.centers = cfg.get_string("centers", ec.dim == 2 ? "spiral" : "random");
  ec.centers_file = cfg.get_string("centers_file", "");
  if (ec.centers == "file" && ec.centers_file.empty())
    throw std::runtime_error("centers = file requires centers_file");

  ec.delta = cfg.get_double_list("delta", {0.001, 0.01, 0.1, 0.3, 0.5});
  for (double d : ec.delta)
    if (d < 0) throw std::runtime_error("delta must be nonnegative");
  ec.n_test = cfg.get_int("n_test", 10000);
  if (ec.n_test < 1) throw std::runtime_error("n_test must be positive");
  ec.design_dir = design_directory(cfg.get_string("design_dir", ""));
  ec.diagnostics = cfg.get_string("diagnostics", "estimate");
  if (ec.diagnostics != "estimate" && ec.diagnostics != "exact")
    throw std::runtime_error("diagnostics must be estimate or exact");

  if (s1k) {
    std::vector<int> def;
    for (int t = 1; t <= 45; t += 2) def.push_back(t);
    ec.t_grid = cfg.get_int_list("t_grid", def);
    if (ec.t_grid.empty()) throw std::runtime_error("t_grid is empty");
  }
  if (s1d || s2 || s3 || s4)
    ec.base_t = cfg.get_int("base_t", (s1d || s2) ? 45 : 15);
  if (s1d) {
    std::vector<int> def;
    for (int k = 2; k <= 40; k += 2) def.push_back(k);
    ec.k_grid = cfg.get_int_list("k_grid", def);
    if (ec.k_grid.empty()) throw std::runtime_error("k_grid is empty");
  }
  if (s2) {
    std::vector<int> def;
    for (int m = 5; m <= 50; m += 5) def.push_back(m);
    ec.m_grid = cfg.get_int_list("m_grid", def);
    ec.division = cfg.get_string("division", "random");
    if (ec.division != "random" && ec.division != "rotation")
      throw std::runtime_error("sim2 division must be random or rotation");
    ec.copies = cfg.get_int("copies", ec.division == "rotation" ? 10 : 1);
  }
  if (s3) {
    std::vector<int> defm;
    for (int m = 10; m <= 40; m += 2) defm.push_back(m);
    ec.m_grid = cfg.get_int_list("m_grid", defm);
    std::vector<double> defc;
    for (int i = 1; i <= 20; ++i) defc.push_back(0.05 * i);
    ec.c0_grid = cfg.get_double_list("c0_grid", defc);
    ec.cap_factor = cfg.get_double("cap_factor", 2.0);
    ec.copies = cfg.get_int("copies", 10);
  }
  if (s4) {
    ec.copies = cfg.get_int("copies", 10);
    ec.dki_m = cfg.get_int("m", 10);
    ec.lambda_min = cfg.get_double("lambda_min", 1e-10);
    std::vector<int> def;
    for (int s = 1; s <= 45; s += 2) def.push_back(s);
    ec.s_star_grid = cfg.get_int_list("s_star_grid", def);
    ec.include_full_ki = cfg.get_bool("include_full_ki", true);
  }
  if (apb) {
    ec.n_train_grid = cfg.get_int_list("n_train_grid", {200, 400, 600, 800, 1000});
    std::vector<int> defm;
    for (int m = 2; m <= 20; m += 2) defm.push_back(m);
    ec.m_grid = cfg.get_int_list("m_grid", defm);
    ec.sigma_count = cfg.get_int("sigma_count", 20);
    ec.sigma_lo = cfg.get_double("sigma_lo", 0.1);
    ec.sigma_hi = cfg.get_double("sigma_hi", 100.0);
    if (ec.sigma_count < 2 || !(ec.sigma_lo > 0) || !(ec.sigma_hi > ec.sigma_lo))
      throw std::runtime_error("appendix_b sigma grid is malformed");
    if (ec.kernel != "gaussian")
      throw std::runtime_error("appendix_b requires the gaussian kernel");
  }
  cfg.check_consumed();
  return ec;
}

// ---- runners --------------------------------------------------------------

ResultTable run_sim1_ki(const ExperimentConfig& cfg) {
  const TargetFunction target = make_target(cfg);
  const PointSet test = make_test_points(cfg);
  const Eigen::VectorXd truth = target(test);
  const KernelSpec kernel = make_kernel(cfg);
  const FitOptions opt = fit_options(cfg);

  std::vector<PointSet> designs;
  for (int t : cfg.t_grid) designs.push_back(load_design_degree(cfg.design_dir, t));

  const std::size_t ng = cfg.t_grid.size() * cfg.delta.size();
  const std::size_t ntasks = ng * static_cast<std::size_t>(cfg.repetitions);
  auto rows = run_tasks(
      ntasks,
      [&](std::size_t task) -> std::vector<Row> {
        const std::size_t gi = task / cfg.repetitions;
        const int rep = static_cast<int>(task % cfg.repetitions);
        const std::size_t ti = gi / cfg.delta.size();
        const double delta = cfg.delta[gi % cfg.delta.size()];
        const PointSet& design = designs[ti];
        Rng rng = Rng::derive(cfg.seed, gi, static_cast<std::uint64_t>(rep));
        Eigen::VectorXd y = add_gaussian_noise(target(design), delta, rng);
        auto t0 = Clock::now();
        Interpolant fit = ki_fit(kernel, LabeledData(design, y), opt);
        double wall = seconds_since(t0);
        double err = rmse(evaluate(fit, test), truth);
        const auto& dg = fit.diagnostics();
        return {{cfg.experiment, "ki", std::to_string(rep),
                 std::to_string(cfg.t_grid[ti]), std::to_string(design.size()),
                 "1", fmt_num(delta), fmt_num(err), method_name(dg.method),
                 fmt_num(dg.sigma_min), fmt_num(dg.sigma_max), fmt_num(dg.cond),
                 fmt_num(native_norm_sq(fit)), fmt_num(wall)}};
      },
      true);
  ResultTable table;
  table.header = {"experiment", "method", "rep",       "t",
                  "n_train",    "m",      "delta",     "rmse",
                  "solve_method", "sigma_min", "sigma_max", "cond",
                  "native_norm_sq", "wall_seconds"};
  table.rows = std::move(rows);
  return table;
}

ResultTable run_sim1_dki(const ExperimentConfig& cfg) {
  const TargetFunction target = make_target(cfg);
  const PointSet test = make_test_points(cfg);
  const Eigen::VectorXd truth = target(test);
  const KernelSpec kernel = make_kernel(cfg);
  const FitOptions opt = fit_options(cfg);
  const PointSet design = load_design_degree(cfg.design_dir, cfg.base_t);

  const std::size_t ng = cfg.k_grid.size() * cfg.delta.size();
  const std::size_t ntasks = ng * static_cast<std::size_t>(cfg.repetitions);
  auto rows = run_tasks(
      ntasks,
      [&](std::size_t task) -> std::vector<Row> {
        const std::size_t gi = task / cfg.repetitions;
        const int rep = static_cast<int>(task % cfg.repetitions);
        const int k = cfg.k_grid[gi / cfg.delta.size()];
        const double delta = cfg.delta[gi % cfg.delta.size()];
        Rng rng = Rng::derive(cfg.seed, gi, static_cast<std::uint64_t>(rep));
        PointSet data = rotated_union(design, k);
        Eigen::VectorXd y = add_gaussian_noise(target(data), delta, rng);
        Partition p = consecutive_blocks(data.size(), k);
        auto t0 = Clock::now();
        DkiModel model = dki_fit(kernel, LabeledData(data, y), p, opt);
        double wall = seconds_since(t0);
        double err = rmse(dki_evaluate(model, test), truth);
        return {{cfg.experiment, "dki", std::to_string(rep), std::to_string(k),
                 std::to_string(data.size()), std::to_string(k), fmt_num(delta),
                 fmt_num(err), std::to_string(fallback_count(model)),
                 fmt_num(wall)}};
      },
      true);
  ResultTable table;
  table.header = {"experiment", "method", "rep",  "k",
                  "n_train",    "m",      "delta", "rmse",
                  "fallback_blocks", "wall_seconds"};
  table.rows = std::move(rows);
  return table;
}

ResultTable run_sim2(const ExperimentConfig& cfg) {
  const TargetFunction target = make_target(cfg);
  const PointSet test = make_test_points(cfg);
  const Eigen::VectorXd truth = target(test);
  const KernelSpec kernel = make_kernel(cfg);
  const FitOptions opt = fit_options(cfg);
  const PointSet design = load_design_degree(cfg.design_dir, cfg.base_t);
  const PointSet data =
      cfg.copies > 1 ? rotated_union(design, cfg.copies) : design;
  std::vector<PointSet> sets;
  if (cfg.division == "rotation")
    for (int j = 1; j <= cfg.copies; ++j)
      sets.push_back(design.rotated(rotation_z(j)));

  const std::size_t ng = cfg.m_grid.size() * cfg.delta.size();
  const std::size_t ntasks = ng * static_cast<std::size_t>(cfg.repetitions);
  auto rows = run_tasks(
      ntasks,
      [&](std::size_t task) -> std::vector<Row> {
        const std::size_t gi = task / cfg.repetitions;
        const int rep = static_cast<int>(task % cfg.repetitions);
        const int m = cfg.m_grid[gi / cfg.delta.size()];
        const double delta = cfg.delta[gi % cfg.delta.size()];
        Rng rng = Rng::derive(cfg.seed, gi, static_cast<std::uint64_t>(rep));
        Eigen::VectorXd y = add_gaussian_noise(target(data), delta, rng);
        Partition p = cfg.division == "rotation"
                          ? rotation_division(sets, m, rng.next_u64())
                          : random_division(data, m, rng.next_u64());
        auto t0 = Clock::now();
        DkiModel model = dki_fit(kernel, LabeledData(data, y), p, opt);
        double wall = seconds_since(t0);
        double err = rmse(dki_evaluate(model, test), truth);
        return {{cfg.experiment, "dki", std::to_string(rep),
                 std::to_string(cfg.base_t), std::to_string(data.size()),
                 std::to_string(m), fmt_num(delta), fmt_num(err),
                 std::to_string(fallback_count(model)), fmt_num(wall)}};
      },
      true);
  ResultTable table;
  table.header = {"experiment", "method", "rep",  "t",
                  "n_train",    "m",      "delta", "rmse",
                  "fallback_blocks", "wall_seconds"};
  table.rows = std::move(rows);
  return table;
}

ResultTable run_sim3(const ExperimentConfig& cfg) {
  const TargetFunction target = make_target(cfg);
  const PointSet test = make_test_points(cfg);
  const Eigen::VectorXd truth = target(test);
  const KernelSpec kernel = make_kernel(cfg);
  const FitOptions opt = fit_options(cfg);
  const PointSet design = load_design_degree(cfg.design_dir, cfg.base_t);
  const PointSet data = rotated_union(design, cfg.copies);
  std::vector<PointSet> sets;
  for (int j = 1; j <= cfg.copies; ++j)
    sets.push_back(design.rotated(rotation_z(j)));

  // Grid: rotation-division entries first, then separation-targeted entries.
  const std::size_t n_rot = cfg.m_grid.size();
  const std::size_t n_saj = cfg.c0_grid.size();
  const std::size_t ng = (n_rot + n_saj) * cfg.delta.size();
  const std::size_t ntasks = ng * static_cast<std::size_t>(cfg.repetitions);
  auto rows = run_tasks(
      ntasks,
      [&](std::size_t task) -> std::vector<Row> {
        const std::size_t gi = task / cfg.repetitions;
        const int rep = static_cast<int>(task % cfg.repetitions);
        const std::size_t pi = gi / cfg.delta.size();
        const double delta = cfg.delta[gi % cfg.delta.size()];
        Rng rng = Rng::derive(cfg.seed, gi, static_cast<std::uint64_t>(rep));
        Eigen::VectorXd y = add_gaussian_noise(target(data), delta, rng);
        std::string method;
        double param = 0.0;
        Partition p;
        if (pi < n_rot) {
          method = "rotation";
          param = cfg.m_grid[pi];
          p = rotation_division(sets, cfg.m_grid[pi], rng.next_u64());
        } else {
          method = "saj";
          param = cfg.c0_grid[pi - n_rot];
          p = saj(data, param, rng.next_u64(), cfg.cap_factor);
        }
        auto t0 = Clock::now();
        DkiModel model = dki_fit(kernel, LabeledData(data, y), p, opt);
        double wall = seconds_since(t0);
        double err = rmse(dki_evaluate(model, test), truth);
        return {{cfg.experiment, method, std::to_string(rep), fmt_num(param),
                 std::to_string(p.block_count()), std::to_string(data.size()),
                 fmt_num(delta), fmt_num(err),
                 std::to_string(fallback_count(model)), fmt_num(wall)}};
      },
      true);
  ResultTable table;
  table.header = {"experiment", "method", "rep",  "param",
                  "m",          "n_train", "delta", "rmse",
                  "fallback_blocks", "wall_seconds"};
  table.rows = std::move(rows);
  return table;
}

ResultTable run_sim4(const ExperimentConfig& cfg) {
  const TargetFunction target = make_target(cfg);
  const PointSet test = make_test_points(cfg);
  const Eigen::VectorXd truth = target(test);
  const KernelSpec kernel = make_kernel(cfg);
  const FitOptions opt = fit_options(cfg);
  const PointSet design = load_design_degree(cfg.design_dir, cfg.base_t);
  const PointSet data = rotated_union(design, cfg.copies);

  std::vector<double> lambdas;
  for (double lam = 1.0; lam > cfg.lambda_min; lam *= 0.5) lambdas.push_back(lam);

  ResultTable table;
  table.header = {"experiment", "method", "rep",  "param",
                  "n_train",    "delta",  "rmse", "wall_seconds"};

  // Sequential so the wall-clock columns reflect uncontended fits.
  for (std::size_t di = 0; di < cfg.delta.size(); ++di) {
    const double delta = cfg.delta[di];
    for (int rep = 0; rep < cfg.repetitions; ++rep) {
      Rng rng = Rng::derive(cfg.seed, di, static_cast<std::uint64_t>(rep));
      Eigen::VectorXd y = add_gaussian_noise(target(data), delta, rng);
      LabeledData full(data, y);
      Partition p = (cfg.copies == cfg.dki_m)
                        ? consecutive_blocks(data.size(), cfg.dki_m)
                        : random_division(data, cfg.dki_m, rng.next_u64());

      auto t0 = Clock::now();
      DkiModel dki = dki_fit(kernel, full, p, opt);
      double dki_wall = seconds_since(t0);
      table.rows.push_back({cfg.experiment, "dki", std::to_string(rep),
                            std::to_string(cfg.dki_m),
                            std::to_string(data.size()), fmt_num(delta),
                            fmt_num(rmse(dki_evaluate(dki, test), truth)),
                            fmt_num(dki_wall)});

      if (cfg.include_full_ki) {
        t0 = Clock::now();
        Interpolant ki = ki_fit(kernel, full, opt);
        double ki_wall = seconds_since(t0);
        table.rows.push_back({cfg.experiment, "ki", std::to_string(rep), "0",
                              std::to_string(data.size()), fmt_num(delta),
                              fmt_num(rmse(evaluate(ki, test), truth)),
                              fmt_num(ki_wall)});
      }

      for (double lam : lambdas) {
        t0 = Clock::now();
        std::vector<Interpolant> locals;
        for (const auto& blk : p.blocks) {
          Eigen::VectorXd yb(static_cast<Eigen::Index>(blk.size()));
          for (std::size_t i = 0; i < blk.size(); ++i)
            yb[static_cast<Eigen::Index>(i)] = y[blk[i]];
          locals.push_back(
              krr_fit(kernel, LabeledData(data.subset(blk), yb), lam, opt));
        }
        double wall = seconds_since(t0);
        Eigen::VectorXd pred = Eigen::VectorXd::Zero(test.size());
        for (std::size_t j = 0; j < locals.size(); ++j)
          pred += (static_cast<double>(p.blocks[j].size()) / data.size()) *
                  evaluate(locals[j], test);
        table.rows.push_back({cfg.experiment, "dkrr", std::to_string(rep),
                              fmt_num(lam), std::to_string(data.size()),
                              fmt_num(delta), fmt_num(rmse(pred, truth)),
                              fmt_num(wall)});
      }

      for (int s : cfg.s_star_grid) {
        PointSet sub = load_design_degree(cfg.design_dir, s);
        Eigen::VectorXd ys = add_gaussian_noise(target(sub), delta, rng);
        auto t1 = Clock::now();
        Interpolant fit = ki_fit(kernel, LabeledData(sub, ys), opt);
        double wall = seconds_since(t1);
        table.rows.push_back({cfg.experiment, "subsample-ki (simplified)",
                              std::to_string(rep), std::to_string(s),
                              std::to_string(sub.size()), fmt_num(delta),
                              fmt_num(rmse(evaluate(fit, test), truth)),
                              fmt_num(wall)});
      }
    }
  }
  return table;
}

ResultTable run_appendix_b(const ExperimentConfig& cfg) {
  const TargetFunction target = make_target(cfg);
  const PointSet test = make_test_points(cfg);
  const Eigen::VectorXd truth = target(test);
  const FitOptions opt = fit_options(cfg);

  std::vector<double> sigmas;
  for (int i = 0; i < cfg.sigma_count; ++i)
    sigmas.push_back(cfg.sigma_lo *
                     std::pow(cfg.sigma_hi / cfg.sigma_lo,
                              static_cast<double>(i) / (cfg.sigma_count - 1)));
  const int n_full = cfg.n_train_grid.back();

  // Tasks: sample-size sweep (single-machine) then block sweep (distributed).
  const std::size_t n_a = cfg.n_train_grid.size();
  const std::size_t n_b = cfg.m_grid.size();
  const std::size_t ng = (n_a + n_b) * sigmas.size() * cfg.delta.size();
  const std::size_t ntasks = ng * static_cast<std::size_t>(cfg.repetitions);
  auto rows = run_tasks(
      ntasks,
      [&](std::size_t task) -> std::vector<Row> {
        const std::size_t gi = task / cfg.repetitions;
        const int rep = static_cast<int>(task % cfg.repetitions);
        const std::size_t rest = gi / cfg.delta.size();
        const double delta = cfg.delta[gi % cfg.delta.size()];
        const std::size_t pi = rest / sigmas.size();
        const double sigma = sigmas[rest % sigmas.size()];
        Rng rng = Rng::derive(cfg.seed, gi, static_cast<std::uint64_t>(rep));
        const KernelSpec kernel = make_kernel(cfg, sigma);
        if (pi < n_a) {
          const int n = cfg.n_train_grid[pi];
          PointSet x = uniform_sample(cfg.dim, n, rng.next_u64());
          Eigen::VectorXd y = add_gaussian_noise(target(x), delta, rng);
          auto t0 = Clock::now();
          Interpolant fit = ki_fit(kernel, LabeledData(x, y), opt);
          double wall = seconds_since(t0);
          return {{cfg.experiment, "ki", std::to_string(rep),
                   std::to_string(cfg.dim), std::to_string(n), "1",
                   fmt_num(sigma), fmt_num(delta),
                   fmt_num(rmse(evaluate(fit, test), truth)), fmt_num(wall)}};
        }
        const int m = cfg.m_grid[pi - n_a];
        PointSet x = uniform_sample(cfg.dim, n_full, rng.next_u64());
        Eigen::VectorXd y = add_gaussian_noise(target(x), delta, rng);
        Partition p = random_division(x, m, rng.next_u64());
        auto t0 = Clock::now();
        DkiModel model = dki_fit(kernel, LabeledData(x, y), p, opt);
        double wall = seconds_since(t0);
        return {{cfg.experiment, "dki", std::to_string(rep),
                 std::to_string(cfg.dim), std::to_string(n_full),
                 std::to_string(m), fmt_num(sigma), fmt_num(delta),
                 fmt_num(rmse(dki_evaluate(model, test), truth)),
                 fmt_num(wall)}};
      },
      true);
  ResultTable table;
  table.header = {"experiment", "method", "rep",   "d",    "n_train",
                  "m",          "sigma",  "delta", "rmse", "wall_seconds"};
  table.rows = std::move(rows);
  return table;
}

ResultTable run_experiment(const ExperimentConfig& cfg) {
  if (cfg.experiment == "sim1_ki") return run_sim1_ki(cfg);
  if (cfg.experiment == "sim1_dki") return run_sim1_dki(cfg);
  if (cfg.experiment == "sim2") return run_sim2(cfg);
  if (cfg.experiment == "sim3") return run_sim3(cfg);
  if (cfg.experiment == "sim4") return run_sim4(cfg);
  if (cfg.experiment == "appendix_b") return run_appendix_b(cfg);
  throw std::runtime_error("unknown experiment '" + cfg.experiment + "'");
}

}  // namespace ski
