#include "binnms/pipeline.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "binnms/median.hpp"

namespace binnms {

BinnmsResult label_endpoints(std::vector<BinaryVector> endpoints, std::size_t k2,
                             EpsilonMode mode) {
  BinnmsResult r;
  r.endpoints = std::move(endpoints);
  r.epsilon = compute_epsilon(r.endpoints, k2, mode);
  r.labeling = label_clusters(r.endpoints, r.epsilon);
  return r;
}

BinnmsResult run_binnnms(const Dataset& data, std::span<const BinaryVector> candidates,
                         const BinnmsConfig& cfg) {
  if (candidates.empty()) throw std::invalid_argument("no candidate points to cluster");
  if (cfg.k1 == 0) {
    for (const auto& c : candidates) data.require_dim(c);
    return label_endpoints({candidates.begin(), candidates.end()}, cfg.k2, cfg.epsilon_mode);
  }
  auto trajectories = ascend_all(data, candidates, BgaConfig{cfg.k1, cfg.j_max}, cfg.threads);
  BinnmsResult r = label_endpoints(endpoints(trajectories), cfg.k2, cfg.epsilon_mode);
  r.trajectories = std::move(trajectories);
  return r;
}

BinnmsResult run_binnnms(const Dataset& data, const BinnmsConfig& cfg) {
  return run_binnnms(data, data.points(), cfg);
}

ErrorTrajectory quantization_trajectory(std::span<const BinaryVector> candidates,
                                        std::span<const AscentTrajectory> trajectories,
                                        std::span<const int> truth) {
  const std::size_t m = candidates.size();
  if (trajectories.size() != m || truth.size() != m) {
    throw std::invalid_argument("candidates, trajectories and truth must have equal length");
  }
  ErrorTrajectory out;
  if (m == 0) return out;

  int max_class = 0;
  for (int t : truth) {
    if (t < 0) throw std::invalid_argument("truth labels must be nonnegative ids");
    max_class = std::max(max_class, t);
  }
  const auto classes = static_cast<std::size_t>(max_class) + 1;

  auto class_medians = [&](auto&& point_of) {
    std::vector<std::vector<BinaryVector>> members(classes);
    for (std::size_t i = 0; i < m; ++i) {
      members[static_cast<std::size_t>(truth[i])].push_back(point_of(i));
    }
    std::vector<BinaryVector> w;
    w.reserve(classes);
    for (const auto& c : members) {
      // Unused class ids keep a placeholder; no candidate refers to them.
      w.push_back(c.empty() ? BinaryVector(candidates.front().dim()) : median_center({c}));
    }
    return w;
  };
  auto mean_error = [&](auto&& point_of, const std::vector<BinaryVector>& w) {
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      total += static_cast<double>(
          hamming(point_of(i), w[static_cast<std::size_t>(truth[i])]));
    }
    return total / static_cast<double>(m);
  };

  const auto target = class_medians([&](std::size_t i) -> const BinaryVector& {
    return candidates[i];
  });
  std::size_t length = 0;
  for (const auto& t : trajectories) length = std::max(length, t.iterates.size());
  for (std::size_t j = 0; j < length; ++j) {
    auto at = [&](std::size_t i) -> const BinaryVector& {
      const auto& it = trajectories[i].iterates;
      return it[std::min(j, it.size() - 1)];
    };
    out.vs_target.push_back(mean_error(at, target));
    out.vs_intermediate.push_back(mean_error(at, class_medians(at)));
  }
  return out;
}

}  // namespace binnms
