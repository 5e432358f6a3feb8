#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "binnms/binary_vector.hpp"
#include "binnms/dataset.hpp"
#include "binnms/kmodes.hpp"
#include "binnms/labeling.hpp"

namespace binnms {

// Cross-tabulation of two labelings; label values are compacted to 0..R-1 and
// 0..C-1 in ascending order of the original ids.
struct Contingency {
  std::vector<std::vector<std::size_t>> table;  // table[u][v]
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  std::size_t n = 0;

  // Throws std::invalid_argument on length mismatch or empty input.
  static Contingency build(std::span<const int> truth, std::span<const int> pred);
};

enum class NmiNormalization { geometric, arithmetic, max };

NmiNormalization parse_nmi_normalization(std::string_view s);

// Mutual information over a normalising mean of the two entropies. When either
// partition has zero entropy the score is 1 if both are single-cluster, else 0.
double nmi(std::span<const int> truth, std::span<const int> pred,
           NmiNormalization norm = NmiNormalization::geometric);

// Hubert-Arabie adjusted Rand index. Identical degenerate partitions (both one
// cluster, or both all singletons) score 1.
double arand(std::span<const int> truth, std::span<const int> pred);

// Mean Hamming distance from each point to its cluster prototype.
// Throws std::invalid_argument when a label has no prototype.
double quantization_error(const Dataset& data, std::span<const int> labels,
                          std::span<const BinaryVector> prototypes);
double quantization_error(const Dataset& data, const ClusterLabeling& labeling);
double quantization_error(const Dataset& data, const KModesResult& result);

// Number of distinct labels.
std::size_t count_clusters(std::span<const int> labels);

}  // namespace binnms
