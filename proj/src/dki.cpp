#include "ski/dki.hpp"

#include <optional>
#include <stdexcept>

namespace ski {

DkiModel dki_fit(const KernelSpec& kernel, const LabeledData& data,
                 const Partition& p, const FitOptions& opt) {
  if (p.parent_size != data.points.size())
    throw std::invalid_argument("dki_fit: partition does not match data size");
  if (!is_valid_partition(p, true))
    throw std::invalid_argument("dki_fit: partition must be a disjoint cover");

  const std::size_t m = p.blocks.size();
  DkiModel model;
  model.kernel = kernel;
  model.total = data.points.size();
  model.weights.resize(m);
  std::vector<std::optional<Interpolant>> fits(m);
  std::vector<std::string> errors(m);

#pragma omp parallel for schedule(dynamic)
  for (long j = 0; j < static_cast<long>(m); ++j) {
    try {
      const auto& idx = p.blocks[static_cast<std::size_t>(j)];
      Eigen::VectorXd yb(static_cast<Eigen::Index>(idx.size()));
      for (std::size_t i = 0; i < idx.size(); ++i)
        yb[static_cast<Eigen::Index>(i)] = data.values[idx[i]];
      LabeledData block(data.points.subset(idx), std::move(yb));
      fits[static_cast<std::size_t>(j)] = ki_fit(kernel, block, opt);
    } catch (const std::exception& e) {
      errors[static_cast<std::size_t>(j)] = e.what();
    }
  }

  for (std::size_t j = 0; j < m; ++j)
    if (!errors[j].empty())
      throw std::runtime_error("dki_fit: block " + std::to_string(j) +
                               " failed: " + errors[j]);
  for (std::size_t j = 0; j < m; ++j) {
    model.weights[j] =
        static_cast<double>(p.blocks[j].size()) / static_cast<double>(model.total);
    model.locals.push_back(std::move(*fits[j]));
  }
  return model;
}

Eigen::VectorXd dki_evaluate(const DkiModel& model, const PointSet& at) {
  if (model.locals.empty())
    throw std::invalid_argument("dki_evaluate: empty model");
  Eigen::VectorXd out =
      Eigen::VectorXd::Zero(static_cast<Eigen::Index>(at.size()));
  for (std::size_t j = 0; j < model.locals.size(); ++j)
    out += model.weights[j] * evaluate(model.locals[j], at);
  return out;
}

}  // namespace ski
