#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "binnms/binary_vector.hpp"
#include "binnms/dataset.hpp"

namespace binnms {

class KnnSearcher;

enum class Termination {
  fixed_point,     // last two iterates are equal
  max_iterations,  // j_max steps taken without settling
  cycle,           // x_{j+1} == x_{j-1}: the map oscillates between two points
};

std::string_view to_string(Termination t) noexcept;

struct BgaConfig {
  std::size_t k1 = 1;      // neighbors per median-shift step
  std::size_t j_max = 50;  // total step cap, the first step included

  // Throws std::invalid_argument unless 1 <= k1 <= n and j_max >= 1.
  void validate(std::size_t n) const;
};

// Iterates x_0 .. x_J of one binary gradient ascent.
struct AscentTrajectory {
  std::vector<BinaryVector> iterates;
  Termination termination = Termination::max_iterations;
  std::size_t steps = 0;

  const BinaryVector& endpoint() const { return iterates.back(); }
};

// One median-shift step: the majority vote of the k1 nearest data points to x,
// ties resolved toward x itself.
BinaryVector median_shift_step(const Dataset& data, const BinaryVector& x, std::size_t k1);

// Repeats median_shift_step from x0, at least once, until a fixed point, a
// 2-cycle, or cfg.j_max steps.
AscentTrajectory ascend(const Dataset& data, const BinaryVector& x0, const BgaConfig& cfg);

// ascend() for every candidate, concurrently on up to `threads` workers
// (0 = hardware concurrency). Output order matches input order.
std::vector<AscentTrajectory> ascend_all(const Dataset& data,
                                         std::span<const BinaryVector> candidates,
                                         const BgaConfig& cfg, unsigned threads = 0);

// Final iterate of each trajectory.
std::vector<BinaryVector> endpoints(std::span<const AscentTrajectory> trajectories);

namespace detail {

// Iterates `step` from x0 for at most j_max steps (at least one), stopping at
// a fixed point or a 2-cycle.
template <typename Step>
AscentTrajectory iterate_map(const BinaryVector& x0, std::size_t j_max, Step&& step) {
  AscentTrajectory traj;
  traj.iterates.push_back(x0);
  traj.termination = Termination::max_iterations;
  while (traj.steps < j_max) {
    BinaryVector next = step(traj.iterates.back());
    ++traj.steps;
    const std::size_t len = traj.iterates.size();
    const bool settled = next == traj.iterates[len - 1];
    const bool cycled = !settled && len >= 2 && next == traj.iterates[len - 2];
    traj.iterates.push_back(std::move(next));
    if (settled) {
      traj.termination = Termination::fixed_point;
      break;
    }
    if (cycled) {
      traj.termination = Termination::cycle;
      break;
    }
  }
  return traj;
}

AscentTrajectory ascend_with(KnnSearcher& searcher, const Dataset& data, const BinaryVector& x0,
                             const BgaConfig& cfg);

}  // namespace detail

}  // namespace binnms
