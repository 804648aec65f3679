#include "ski/partition.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "ski/rng.hpp"

namespace ski {

namespace {

double dist_ij(const Eigen::MatrixXd& m, int a, int b) {
  double dot = std::clamp(m.row(a).dot(m.row(b)), -1.0, 1.0);
  return std::acos(dot);
}

void check_saj_args(const PointSet& pts, double c0, double cap_factor) {
  if (pts.size() == 0) throw std::invalid_argument("saj: empty point set");
  if (!(c0 > 0.0)) throw std::invalid_argument("saj: c0 must be positive");
  if (!(cap_factor > 0.0))
    throw std::invalid_argument("saj: cap_factor must be positive");
  if (c0 >= 3.14159265358979323846)
    std::cerr << "saj: warning: c0 >= pi, every cap covers the sphere\n";
}

}  // namespace

bool is_valid_partition(const Partition& p, bool require_exhaustive) {
  std::vector<char> seen(p.parent_size, 0);
  std::size_t covered = 0;
  for (const auto& block : p.blocks) {
    if (block.empty()) return false;
    for (int idx : block) {
      if (idx < 0 || static_cast<std::size_t>(idx) >= p.parent_size) return false;
      if (seen[static_cast<std::size_t>(idx)]) return false;
      seen[static_cast<std::size_t>(idx)] = 1;
      ++covered;
    }
  }
  return !require_exhaustive || covered == p.parent_size;
}

Partition saj_stage1(const PointSet& pts, double c0, std::uint64_t seed,
                     double cap_factor) {
  check_saj_args(pts, c0, cap_factor);
  const Eigen::MatrixXd& m = pts.mat();
  const double radius = cap_factor * c0;
  Rng rng = Rng::derive(seed, 0x5a1);

  std::vector<int> remaining(pts.size());
  std::iota(remaining.begin(), remaining.end(), 0);

  Partition p;
  p.parent_size = pts.size();
  p.method = "saj_stage1";
  p.params.c0 = c0;
  p.params.cap_factor = cap_factor;
  p.params.seed = seed;

  while (!remaining.empty()) {
    std::vector<int> cand = remaining;
    std::vector<int> block;
    while (!cand.empty()) {
      int pick = cand[rng.index(cand.size())];
      block.push_back(pick);
      // Keep only candidates outside the cap around the picked point.
      std::vector<int> next;
      next.reserve(cand.size());
      for (int y : cand)
        if (dist_ij(m, pick, y) > radius) next.push_back(y);
      cand.swap(next);
    }
    std::vector<char> in_block(pts.size(), 0);
    for (int idx : block) in_block[static_cast<std::size_t>(idx)] = 1;
    std::vector<int> left;
    left.reserve(remaining.size() - block.size());
    for (int idx : remaining)
      if (!in_block[static_cast<std::size_t>(idx)]) left.push_back(idx);
    remaining.swap(left);
    p.blocks.push_back(std::move(block));
  }
  return p;
}

Partition saj_stage2(const Partition& stage1, const PointSet& pts, double c0,
                     std::uint64_t seed, double cap_factor) {
  check_saj_args(pts, c0, cap_factor);
  if (stage1.method != "saj_stage1")
    throw std::invalid_argument("saj_stage2: input must come from stage 1");
  if (stage1.parent_size != pts.size() || stage1.params.c0 != c0 ||
      stage1.params.cap_factor != cap_factor)
    throw std::invalid_argument("saj_stage2: stage-1 parameters do not match");
  if (!is_valid_partition(stage1, true))
    throw std::invalid_argument("saj_stage2: invalid stage-1 partition");

  const Eigen::MatrixXd& mat = pts.mat();
  const double radius = cap_factor * c0;
  const std::size_t m = stage1.blocks.size();
  const std::size_t nbar = pts.size() / m;
  Rng rng = Rng::derive(seed, 0x5a2);

  Partition p = stage1;
  p.method = "saj";
  p.params.seed = seed;

  // Split oversized blocks; surplus remembers its origin for the merge-back.
  struct Surplus {
    int idx;
    std::size_t origin;
  };
  std::vector<Surplus> surplus;
  for (std::size_t j = 0; j < m; ++j) {
    auto& block = p.blocks[j];
    if (block.size() > nbar) {
      rng.shuffle(block);
      for (std::size_t t = nbar; t < block.size(); ++t)
        surplus.push_back({block[t], j});
      block.resize(nbar);
    }
  }
  rng.shuffle(surplus);

  std::vector<char> placed(surplus.size(), 0);
  bool moved = true;
  while (moved) {
    moved = false;
    for (std::size_t s = 0; s < surplus.size(); ++s) {
      if (placed[s]) continue;
      // Undersized blocks, smallest first; ties by block id.
      std::vector<std::size_t> targets;
      for (std::size_t j = 0; j < m; ++j)
        if (p.blocks[j].size() < nbar) targets.push_back(j);
      std::stable_sort(targets.begin(), targets.end(),
                       [&](std::size_t a, std::size_t b) {
                         return p.blocks[a].size() < p.blocks[b].size();
                       });
      for (std::size_t j : targets) {
        bool fits = true;
        for (int y : p.blocks[j])
          if (dist_ij(mat, surplus[s].idx, y) <= radius) {
            fits = false;
            break;
          }
        if (fits) {
          p.blocks[j].push_back(surplus[s].idx);
          placed[s] = 1;
          moved = true;
          break;
        }
      }
    }
  }
  for (std::size_t s = 0; s < surplus.size(); ++s)
    if (!placed[s]) p.blocks[surplus[s].origin].push_back(surplus[s].idx);
  return p;
}

Partition saj(const PointSet& pts, double c0, std::uint64_t seed,
              double cap_factor) {
  Partition s1 = saj_stage1(pts, c0, seed, cap_factor);
  return saj_stage2(s1, pts, c0, seed, cap_factor);
}

Partition rotation_division(const std::vector<PointSet>& sets, int m,
                            std::uint64_t seed) {
  if (sets.empty()) throw std::invalid_argument("rotation_division: no sets");
  const std::size_t s = sets.size();
  const std::size_t set_size = sets[0].size();
  for (const auto& ps : sets)
    if (ps.size() != set_size || ps.dim() != sets[0].dim())
      throw std::invalid_argument(
          "rotation_division: sets must share size and dimension");
  if (set_size == 0) throw std::invalid_argument("rotation_division: empty sets");
  if (m < static_cast<int>(s))
    throw std::invalid_argument("rotation_division: m must be >= set count");

  Rng rng = Rng::derive(seed, 0x407);
  const int base = m / static_cast<int>(s);
  const int rem = m % static_cast<int>(s);
  std::vector<int> parts(s, base);
  if (rem > 0) {
    std::vector<std::size_t> order(s);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    for (int i = 0; i < rem; ++i) parts[order[static_cast<std::size_t>(i)]]++;
  }

  Partition p;
  p.parent_size = s * set_size;
  p.method = "rotation";
  p.params.m = m;
  p.params.seed = seed;
  for (std::size_t k = 0; k < s; ++k) {
    const int pk = parts[k];
    if (static_cast<std::size_t>(pk) > set_size)
      throw std::invalid_argument("rotation_division: more blocks than points");
    std::vector<int> idx(set_size);
    std::iota(idx.begin(), idx.end(), static_cast<int>(k * set_size));
    rng.shuffle(idx);
    const std::size_t q = set_size / static_cast<std::size_t>(pk);
    const std::size_t r = set_size % static_cast<std::size_t>(pk);
    std::size_t at = 0;
    for (int b = 0; b < pk; ++b) {
      std::size_t len = q + (static_cast<std::size_t>(b) < r ? 1 : 0);
      p.blocks.emplace_back(idx.begin() + static_cast<long>(at),
                            idx.begin() + static_cast<long>(at + len));
      at += len;
    }
  }
  return p;
}

Partition random_division(const PointSet& pts, int m, std::uint64_t seed) {
  const std::size_t n = pts.size();
  if (m < 1) throw std::invalid_argument("random_division: m must be positive");
  if (static_cast<std::size_t>(m) > n)
    throw std::invalid_argument("random_division: more blocks than points");
  Rng rng = Rng::derive(seed, 0x4a9);
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  rng.shuffle(idx);

  Partition p;
  p.parent_size = n;
  p.method = "random";
  p.params.m = m;
  p.params.seed = seed;
  const std::size_t q = n / static_cast<std::size_t>(m);
  const std::size_t r = n % static_cast<std::size_t>(m);
  std::size_t at = 0;
  for (int b = 0; b < m; ++b) {
    std::size_t len = q + (static_cast<std::size_t>(b) < r ? 1 : 0);
    p.blocks.emplace_back(idx.begin() + static_cast<long>(at),
                          idx.begin() + static_cast<long>(at + len));
    at += len;
  }
  return p;
}

PartitionReport block_report(const Partition& p, const PointSet& pts,
                             const PointSet& candidates,
                             double separation_bound) {
  if (p.parent_size != pts.size())
    throw std::invalid_argument("block_report: partition does not match points");
  if (!is_valid_partition(p, false))
    throw std::invalid_argument("block_report: invalid partition");
  const double nan = std::numeric_limits<double>::quiet_NaN();
  PartitionReport rep;
  rep.min_count = std::numeric_limits<std::size_t>::max();
  rep.min_separation = nan;
  for (std::size_t j = 0; j < p.blocks.size(); ++j) {
    PointSet sub = pts.subset(p.blocks[j]);
    BlockMetrics bm;
    bm.block = static_cast<int>(j);
    bm.count = sub.size();
    bm.mesh_norm = mesh_norm_estimate(sub, candidates);
    if (sub.size() >= 2) {
      bm.separation = separation_radius(sub);
      bm.mesh_ratio = bm.mesh_norm / bm.separation;
      bm.separation_ok =
          separation_bound <= 0.0 || bm.separation > separation_bound;
      if (std::isnan(rep.min_separation) || bm.separation < rep.min_separation)
        rep.min_separation = bm.separation;
    } else {
      bm.separation = nan;
      bm.mesh_ratio = nan;
      bm.separation_ok = true;
    }
    if (!bm.separation_ok) ++rep.violations;
    rep.min_count = std::min(rep.min_count, bm.count);
    rep.max_count = std::max(rep.max_count, bm.count);
    rep.blocks.push_back(bm);
  }
  return rep;
}

std::string partition_to_text(const Partition& p) {
  std::ostringstream out;
  for (const auto& block : p.blocks) {
    if (block.empty())
      throw std::invalid_argument("partition_to_text: empty block");
    for (std::size_t i = 0; i < block.size(); ++i) {
      if (i) out << ' ';
      out << block[i];
    }
    out << '\n';
  }
  return out.str();
}

Partition parse_partition(const std::string& text) {
  Partition p;
  p.method = "file";
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  int max_idx = -1;
  std::vector<char> seen;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<int> block;
    std::string tok;
    while (ls >> tok) {
      char* end = nullptr;
      long v = std::strtol(tok.c_str(), &end, 10);
      if (end == tok.c_str() || *end != '\0' || v < 0)
        throw std::runtime_error("partition line " + std::to_string(lineno) +
                                 ": malformed index '" + tok + "'");
      block.push_back(static_cast<int>(v));
      max_idx = std::max(max_idx, static_cast<int>(v));
    }
    if (block.empty()) continue;
    for (int idx : block) {
      if (static_cast<std::size_t>(idx) >= seen.size())
        seen.resize(static_cast<std::size_t>(idx) + 1, 0);
      if (seen[static_cast<std::size_t>(idx)])
        throw std::runtime_error("partition line " + std::to_string(lineno) +
                                 ": index " + std::to_string(idx) +
                                 " appears twice");
      seen[static_cast<std::size_t>(idx)] = 1;
    }
    p.blocks.push_back(std::move(block));
  }
  if (p.blocks.empty()) throw std::runtime_error("partition file has no blocks");
  p.parent_size = static_cast<std::size_t>(max_idx) + 1;
  return p;
}

void save_partition(const Partition& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write partition file: " + path);
  out << partition_to_text(p);
}

Partition load_partition(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open partition file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_partition(ss.str());
}

}  // namespace ski
