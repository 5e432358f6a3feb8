#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "binnms/bga.hpp"
#include "binnms/binary_vector.hpp"
#include "binnms/dataset.hpp"
#include "binnms/labeling.hpp"

namespace binnms {

// Parameters of a full median-shift clustering run.
struct BinnmsConfig {
  std::size_t k1 = 10;  // ascent neighbors; 0 labels the candidates without ascending
  std::size_t k2 = 5;   // neighbors used to derive the merge threshold
  std::size_t j_max = 50;
  EpsilonMode epsilon_mode = EpsilonMode::mean_all;
  unsigned threads = 0;
};

struct BinnmsResult {
  std::vector<AscentTrajectory> trajectories;  // empty when k1 == 0
  std::vector<BinaryVector> endpoints;         // converged point per candidate
  double epsilon = 0.0;
  ClusterLabeling labeling;

  bool single_cluster() const noexcept { return labeling.num_clusters == 1; }
};

// Ascends every candidate, then merges endpoints within epsilon of each other.
BinnmsResult run_binnnms(const Dataset& data, std::span<const BinaryVector> candidates,
                         const BinnmsConfig& cfg);
// Candidates are the data points themselves.
BinnmsResult run_binnnms(const Dataset& data, const BinnmsConfig& cfg);

// Labeling stage alone, over already converged points.
BinnmsResult label_endpoints(std::vector<BinaryVector> endpoints, std::size_t k2,
                             EpsilonMode mode);

// Per-iteration quantization error of the ascent, against the ground-truth
// partition of the candidates. Iteration j uses each candidate's j-th iterate
// (its last one once it has stopped).
//   vs_target       - distance to the median center of the candidate's class
//                     in the original data
//   vs_intermediate - distance to the median center of the candidate's class
//                     recomputed over the current iterates
struct ErrorTrajectory {
  std::vector<double> vs_target;
  std::vector<double> vs_intermediate;
};

ErrorTrajectory quantization_trajectory(std::span<const BinaryVector> candidates,
                                        std::span<const AscentTrajectory> trajectories,
                                        std::span<const int> truth);

}  // namespace binnms
