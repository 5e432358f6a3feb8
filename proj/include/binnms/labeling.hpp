#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "binnms/binary_vector.hpp"

namespace binnms {

// How the merge threshold is derived from k2-nearest-neighbor distances.
//   mean_all - per point, the mean of its k2 nearest distances; then the mean
//              over points
//   kth_only - per point, its k2-th nearest distance; then the mean over points
enum class EpsilonMode { mean_all, kth_only };

std::string_view to_string(EpsilonMode m) noexcept;
// Parses "mean_all" / "kth_only"; throws std::invalid_argument otherwise.
EpsilonMode parse_epsilon_mode(std::string_view s);

struct ClusterLabeling {
  std::vector<int> labels;                // one per input point, 0..num_clusters-1
  std::vector<BinaryVector> prototypes;   // median center of each cluster's points
  std::vector<std::size_t> sizes;
  std::size_t num_clusters = 0;
};

// Merge threshold over `points`, neighbors drawn from the other points only.
// Returns 0 for fewer than two points. Throws std::invalid_argument when
// k2 == 0 or k2 >= number of points.
double compute_epsilon(std::span<const BinaryVector> points, std::size_t k2,
                       EpsilonMode mode = EpsilonMode::mean_all);

// Connected components of the graph joining points at Hamming distance
// <= epsilon. Labels are numbered by first appearance in the input.
ClusterLabeling label_clusters(std::span<const BinaryVector> converged, double epsilon);

}  // namespace binnms
