#include "binnms/knn.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace binnms {

KnnSearcher::KnnSearcher(const Dataset& data)
    : data_(data), dist_(data.n()), histogram_(data.dim() + 1) {}

const NeighborSet& KnnSearcher::query(const BinaryVector& q, std::size_t k) {
  const std::size_t n = data_.n();
  if (k == 0 || k > n) {
    throw std::invalid_argument("k must lie in [1, n]; got k=" + std::to_string(k) +
                                ", n=" + std::to_string(n));
  }
  data_.require_dim(q);

  // Distances are bounded by d, so select with a histogram instead of sorting.
  std::fill(histogram_.begin(), histogram_.end(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto d = static_cast<std::uint32_t>(hamming_unchecked(data_[i], q));
    dist_[i] = d;
    ++histogram_[d];
  }

  // Boundary distance t: all points closer than t are taken, plus the
  // lowest-index `take` points at exactly t.
  std::size_t below = 0;
  std::size_t t = 0;
  while (below + histogram_[t] < k) below += histogram_[t++];
  const std::size_t take = k - below;

  // Bucket start positions in the (distance, index) order.
  std::size_t at = 0;
  for (std::size_t d = 0; d < t; ++d) {
    const std::size_t c = histogram_[d];
    histogram_[d] = at;
    at += c;
  }
  histogram_[t] = below;

  result_.indices.resize(k);
  result_.distances.resize(k);
  std::size_t taken_at_boundary = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t d = dist_[i];
    if (d > t) continue;
    if (d == t) {
      if (taken_at_boundary == take) continue;
      ++taken_at_boundary;
    }
    const std::size_t slot = histogram_[d]++;
    result_.indices[slot] = i;
    result_.distances[slot] = d;
  }
  return result_;
}

NeighborSet knn_query(const Dataset& data, const BinaryVector& q, std::size_t k) {
  KnnSearcher searcher(data);
  return searcher.query(q, k);
}

std::uint32_t kth_distance(const Dataset& data, const BinaryVector& q, std::size_t k) {
  return knn_query(data, q, k).radius();
}

}  // namespace binnms
