// Command-line front end: experiment runner, partition builder, point-set
// metrics, and quadrature exactness checks.
#include <omp.h>

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "ski/experiments.hpp"
#include "ski/partition.hpp"
#include "ski/quadrature.hpp"
#include "ski/sphere.hpp"

namespace {

int cmd_run(const std::string& config_path, std::string out_path,
            const std::string& design_dir,
            const std::vector<std::string>& overrides, int threads) {
  if (threads > 0) omp_set_num_threads(threads);
  ski::KvConfig kv = ski::KvConfig::from_file(config_path);
  for (const auto& ov : overrides) {
    auto eq = ov.find('=');
    if (eq == std::string::npos || eq == 0)
      throw std::runtime_error("override must look like key=value: " + ov);
    kv.set(ov.substr(0, eq), ov.substr(eq + 1));
  }
  if (!design_dir.empty()) kv.set("design_dir", design_dir);
  ski::ExperimentConfig cfg = ski::parse_experiment_config(kv);
  if (out_path.empty()) out_path = cfg.experiment + ".csv";

  auto t0 = std::chrono::steady_clock::now();
  ski::ResultTable table = ski::run_experiment(cfg);
  double elapsed = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - t0).count();
  table.write_csv(out_path);
  std::printf("%s: %zu rows -> %s (%.2f s)\n", cfg.experiment.c_str(),
              table.rows.size(), out_path.c_str(), elapsed);
  return 0;
}

int cmd_partition(const std::string& input, const std::string& method,
                  double c0, double cap_factor, int m, std::uint64_t seed,
                  const std::string& out_path, bool report) {
  ski::PointSet pts = ski::load_design(input);
  ski::Partition p;
  if (method == "saj") {
    if (!(c0 > 0.0)) throw std::runtime_error("saj needs --c0 > 0");
    p = ski::saj(pts, c0, seed, cap_factor);
  } else if (method == "random") {
    if (m < 1) throw std::runtime_error("random needs --blocks >= 1");
    p = ski::random_division(pts, m, seed);
  } else {
    throw std::runtime_error("unknown method '" + method + "'");
  }
  if (!out_path.empty()) ski::save_partition(p, out_path);

  std::printf("points %zu  blocks %zu\n", pts.size(), p.block_count());
  if (report) {
    ski::PointSet cand =
        pts.dim() == 2
            ? ski::spiral_points(static_cast<int>(10 * pts.size()))
            : ski::uniform_sample(pts.dim(),
                                  static_cast<int>(10 * pts.size()), 1);
    double bound = method == "saj" ? c0 : 0.0;
    ski::PartitionReport rep = ski::block_report(p, pts, cand, bound);
    std::printf("block sizes [%zu, %zu]  min separation %.6g  violations %d\n",
                rep.min_count, rep.max_count, rep.min_separation,
                rep.violations);
    for (const auto& b : rep.blocks)
      std::printf("  block %d: count %zu separation %.6g mesh %.6g ratio %.6g%s\n",
                  b.block, b.count, b.separation, b.mesh_norm, b.mesh_ratio,
                  b.separation_ok ? "" : "  [below bound]");
  }
  return 0;
}

int cmd_metrics(const std::string& input, int candidates) {
  ski::PointSet pts = ski::load_design(input);
  ski::QualityMetrics q =
      candidates > 0
          ? ski::quality_metrics(
                pts, pts.dim() == 2
                         ? ski::spiral_points(candidates)
                         : ski::uniform_sample(pts.dim(), candidates, 1))
          : ski::quality_metrics(pts);
  std::printf("count       %zu\n", q.count);
  std::printf("dimension   %d\n", pts.dim());
  std::printf("separation  %.12g\n", q.separation);
  std::printf("mesh_norm   %.12g (candidate estimate)\n", q.mesh_norm);
  std::printf("mesh_ratio  %.12g\n", q.mesh_ratio);
  return 0;
}

int cmd_quadcheck(const std::string& input, int order, double tol,
                  const std::string& csv_path) {
  ski::PointSet pts = ski::load_design(input);
  Eigen::VectorXd w = Eigen::VectorXd::Constant(
      static_cast<Eigen::Index>(pts.size()), 1.0 / static_cast<double>(pts.size()));
  ski::RuleReport rep = ski::verify_rule(pts, w, order, tol);
  std::printf("points %zu  order %d  tol %g\n", pts.size(), order, tol);
  std::printf("weights positive: %s  weight sum: %.17g\n",
              rep.weights_positive ? "yes" : "no", rep.weight_sum);
  std::printf("worst residual %.6g at degree %d\n", rep.worst_residual,
              rep.worst_degree);
  if (rep.first_fail_degree >= 0)
    std::printf("first failing degree: %d\n", rep.first_fail_degree);
  std::printf("%s\n", rep.pass ? "PASS" : "FAIL");
  if (!csv_path.empty()) {
    std::ofstream out(csv_path);
    if (!out) throw std::runtime_error("cannot write " + csv_path);
    out << ski::rule_report_csv(rep);
  }
  return rep.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kernel interpolation toolkit for scattered data on spheres"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run an experiment from a config file");
  std::string run_config, run_out, run_designs;
  std::vector<std::string> run_sets;
  int run_threads = 0;
  run->add_option("-c,--config", run_config, "config file")->required();
  run->add_option("-o,--out", run_out, "output CSV (default <experiment>.csv)");
  run->add_option("--design-dir", run_designs, "design file directory");
  run->add_option("-s,--set", run_sets, "override config entries, key=value");
  run->add_option("--threads", run_threads, "worker thread count (0 = default)");

  auto* part = app.add_subcommand("partition", "Partition a point set file");
  std::string part_in, part_method = "saj", part_out;
  double part_c0 = 0.0, part_cap = 2.0;
  int part_m = 0;
  std::uint64_t part_seed = 1;
  bool part_report = false;
  part->add_option("-i,--input", part_in, "point set file")->required();
  part->add_option("--method", part_method, "saj | random");
  part->add_option("--c0", part_c0, "separation target for greedy division");
  part->add_option("--cap-factor", part_cap, "removal radius multiplier");
  part->add_option("-m,--blocks", part_m, "block count for random division");
  part->add_option("--seed", part_seed, "partition seed");
  part->add_option("-o,--out", part_out, "write block index lines here");
  part->add_flag("--report", part_report, "print per-block quality metrics");

  auto* met = app.add_subcommand("metrics", "Separation and covering metrics");
  std::string met_in;
  int met_cand = 0;
  met->add_option("-i,--input", met_in, "point set file")->required();
  met->add_option("--candidates", met_cand,
                  "covering candidate count (0 = 10x point count)");

  auto* quad = app.add_subcommand(
      "quadcheck", "Check equal-weight quadrature exactness of a point set");
  std::string quad_in, quad_csv;
  int quad_order = 0;
  double quad_tol = 1e-6;
  quad->add_option("-i,--input", quad_in, "point set file")->required();
  quad->add_option("-t,--order", quad_order, "exactness order to check")
      ->required();
  quad->add_option("--tol", quad_tol, "residual tolerance");
  quad->add_option("--csv", quad_csv, "write per-degree residual CSV here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed())
      return cmd_run(run_config, run_out, run_designs, run_sets, run_threads);
    if (part->parsed())
      return cmd_partition(part_in, part_method, part_c0, part_cap, part_m,
                           part_seed, part_out, part_report);
    if (met->parsed()) return cmd_metrics(met_in, met_cand);
    if (quad->parsed())
      return cmd_quadcheck(quad_in, quad_order, quad_tol, quad_csv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
