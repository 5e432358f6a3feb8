#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "binnms/binary_vector.hpp"
#include "binnms/dataset.hpp"

namespace binnms {

// The k nearest dataset points to a query, ordered by (distance, index).
struct NeighborSet {
  std::vector<std::size_t> indices;
  std::vector<std::uint32_t> distances;

  std::size_t size() const noexcept { return indices.size(); }
  // Distance of the farthest member, the k-th nearest neighbor distance.
  std::uint32_t radius() const noexcept { return distances.empty() ? 0 : distances.back(); }
};

// Exact k nearest neighbors by Hamming distance. The query itself is eligible
// if it appears in the data. Ties at the boundary distance go to the lower
// dataset index, so the result always has exactly k members.
// Throws std::invalid_argument unless 1 <= k <= n, DimensionMismatch on dims.
NeighborSet knn_query(const Dataset& data, const BinaryVector& q, std::size_t k);

std::uint32_t kth_distance(const Dataset& data, const BinaryVector& q, std::size_t k);

// Reusable scratch space for repeated queries against one dataset; avoids
// per-query allocation in the ascent loop. Not thread-safe; use one per worker.
class KnnSearcher {
 public:
  explicit KnnSearcher(const Dataset& data);

  const NeighborSet& query(const BinaryVector& q, std::size_t k);

 private:
  const Dataset& data_;
  std::vector<std::uint32_t> dist_;
  std::vector<std::size_t> histogram_;
  NeighborSet result_;
};

}  // namespace binnms
