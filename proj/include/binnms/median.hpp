#pragma once

#include <cstddef>
#include <span>

#include "binnms/binary_vector.hpp"
#include "binnms/dataset.hpp"

namespace binnms {

// Points with positive weights; an empty weight span means all weights are 1.
struct WeightedSample {
  std::span<const BinaryVector> points;
  std::span<const double> weights = {};
};

// Binary vector minimising the weighted Hamming inertia of the sample: the
// component-wise weighted majority vote. On an exact tie in component j the
// result takes tie_breaker[j] when given, else 0.
// Throws std::invalid_argument on an empty sample or bad weights, and
// DimensionMismatch on mixed dimensions.
BinaryVector median_center(WeightedSample s, const BinaryVector* tie_breaker = nullptr);

// Median center of data[indices], using the dataset's weights.
BinaryVector median_center_of(const Dataset& data, std::span<const std::size_t> indices,
                              const BinaryVector* tie_breaker = nullptr);

// Sum over the sample of weight * hamming(point, x).
double inertia(WeightedSample s, const BinaryVector& x);

}  // namespace binnms
