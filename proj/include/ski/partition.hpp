// Index-level partitions of a dataset into blocks, and the algorithms that
// build them: greedy cap-removal with a balancing pass ("saj"),
// rotation-copy division, and random near-equal division.  Blocks are lists
// of zero-based indices into the parent set; partition construction is
// single-threaded and deterministic under its seed.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ski/sphere.hpp"

namespace ski {

struct PartitionParams {
  double c0 = 0.0;         // separation target for the greedy division
  double cap_factor = 2.0; // removal radius = cap_factor * c0
  int m = 0;               // requested block count where applicable
  std::uint64_t seed = 0;
};

struct Partition {
  std::vector<std::vector<int>> blocks;
  std::size_t parent_size = 0;
  std::string method;  // "saj_stage1", "saj", "rotation", "random", "file"
  PartitionParams params;

  std::size_t block_count() const { return blocks.size(); }
};

// Disjointness and index-range validity; optionally require that the blocks
// cover every parent index.
bool is_valid_partition(const Partition& p, bool require_exhaustive);

// Stage 1: repeatedly seed a block with a random remaining point and remove
// the spherical cap of radius cap_factor * c0 around every selected point;
// recurse on the leftovers.  Every block then has pairwise geodesic
// distances > cap_factor * c0, i.e. separation radius > c0 at the default
// cap_factor of 2.
Partition saj_stage1(const PointSet& pts, double c0, std::uint64_t seed,
                     double cap_factor = 2.0);

// Stage 2: balance stage-1 blocks toward floor(N/m) points each.  Oversized
// blocks are randomly split; surplus points move into the smallest
// undersized blocks that can take them without breaking the separation
// condition; anything unplaced returns to its origin block.  Block-size
// spread never increases.
Partition saj_stage2(const Partition& stage1, const PointSet& pts, double c0,
                     std::uint64_t seed, double cap_factor = 2.0);

// Both stages.
Partition saj(const PointSet& pts, double c0, std::uint64_t seed,
              double cap_factor = 2.0);

// Division of equally sized point-set copies laid out consecutively in the
// parent set: with r = m mod s for s sets, r randomly chosen sets split into
// ceil(m/s) blocks and the rest into floor(m/s); within a set, block sizes
// differ by at most one.  Requires m >= s.
Partition rotation_division(const std::vector<PointSet>& sets, int m,
                            std::uint64_t seed);

// Seeded shuffle into m blocks whose sizes differ by at most one.
Partition random_division(const PointSet& pts, int m, std::uint64_t seed);

struct BlockMetrics {
  int block = 0;
  std::size_t count = 0;
  double separation = 0.0;  // NaN for singleton blocks
  double mesh_norm = 0.0;
  double mesh_ratio = 0.0;  // NaN for singleton blocks
  bool separation_ok = true;
};

struct PartitionReport {
  std::vector<BlockMetrics> blocks;
  std::size_t min_count = 0, max_count = 0;
  double min_separation = 0.0;  // over non-singleton blocks, NaN if none
  int violations = 0;           // blocks failing the separation bound
};

// Per-block quality metrics against a shared candidate set; if
// separation_bound > 0, flags blocks whose separation is not above it.
PartitionReport block_report(const Partition& p, const PointSet& pts,
                             const PointSet& candidates,
                             double separation_bound = 0.0);

// One line per block of space-separated zero-based indices; round-trips
// losslessly through parse_partition.
std::string partition_to_text(const Partition& p);
Partition parse_partition(const std::string& text);
void save_partition(const Partition& p, const std::string& path);
Partition load_partition(const std::string& path);

}  // namespace ski
