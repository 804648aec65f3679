// Distributed fitting: one interpolant per partition block, synthesized by
// averaging with weights |D_j| / |D|.
#pragma once

#include <vector>

#include "ski/interpolation.hpp"
#include "ski/partition.hpp"

namespace ski {

struct DkiModel {
  std::vector<Interpolant> locals;
  std::vector<double> weights;  // block size over total size
  std::size_t total = 0;
  KernelSpec kernel = KernelSpec::wendland();
};

// Fits every block independently (blocks may be fitted concurrently); an
// error in any block aborts the whole fit and names the block.  The
// partition must be a disjoint, exhaustive cover of the data by nonempty
// blocks.
DkiModel dki_fit(const KernelSpec& kernel, const LabeledData& data,
                 const Partition& p, const FitOptions& opt = {});

// Weighted average of the local interpolants, accumulated in ascending
// block order so results do not depend on scheduling.
Eigen::VectorXd dki_evaluate(const DkiModel& model, const PointSet& at);

}  // namespace ski
