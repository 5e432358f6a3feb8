#include "binnms/median.hpp"

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "binnms/errors.hpp"

namespace binnms {

namespace {

using Word = BinaryVector::Word;

// Adds `w` to tally[j] for every set component j of v.
template <typename T>
void tally_ones(const BinaryVector& v, T w, std::vector<T>& tally) {
  const auto words = v.words();
  for (std::size_t k = 0; k < words.size(); ++k) {
    for (Word bits = words[k]; bits != 0; bits &= bits - 1) {
      tally[k * BinaryVector::kWordBits + static_cast<std::size_t>(std::countr_zero(bits))] += w;
    }
  }
}

void check_tie_breaker(std::size_t dim, const BinaryVector* tie_breaker) {
  if (tie_breaker != nullptr && tie_breaker->dim() != dim) {
    throw DimensionMismatch(dim, tie_breaker->dim());
  }
}

// Majority from integer counts out of `total` unit-weight votes.
BinaryVector majority_from_counts(std::size_t dim, const std::vector<std::uint32_t>& ones,
                                  std::uint32_t total, const BinaryVector* tie_breaker) {
  BitWriter out(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    const std::uint64_t twice = 2ULL * ones[j];
    if (twice > total) {
      out.set(j);
    } else if (twice == total && tie_breaker != nullptr && (*tie_breaker)[j]) {
      out.set(j);
    }
  }
  return std::move(out).build();
}

}  // namespace

BinaryVector median_center(WeightedSample s, const BinaryVector* tie_breaker) {
  if (s.points.empty()) throw std::invalid_argument("median center of an empty sample");
  if (!s.weights.empty() && s.weights.size() != s.points.size()) {
    throw std::invalid_argument("weight count does not match point count");
  }
  const std::size_t dim = s.points.front().dim();
  for (const auto& p : s.points) {
    if (p.dim() != dim) throw DimensionMismatch(dim, p.dim());
  }
  check_tie_breaker(dim, tie_breaker);

  if (s.weights.empty()) {
    std::vector<std::uint32_t> ones(dim, 0);
    for (const auto& p : s.points) tally_ones<std::uint32_t>(p, 1U, ones);
    return majority_from_counts(dim, ones, static_cast<std::uint32_t>(s.points.size()),
                                tie_breaker);
  }

  // Weighted: compare the mass voting 1 against the mass voting 0 directly,
  // both accumulated in point order, so equal masses compare exactly equal.
  std::vector<double> ones(dim, 0.0);
  std::vector<double> zeros(dim, 0.0);
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    const double w = s.weights[i];
    if (!(w > 0.0)) throw std::invalid_argument("weights must be positive");
    for (std::size_t j = 0; j < dim; ++j) {
      (s.points[i][j] ? ones[j] : zeros[j]) += w;
    }
  }
  BitWriter out(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    if (ones[j] > zeros[j]) {
      out.set(j);
    } else if (ones[j] == zeros[j] && tie_breaker != nullptr && (*tie_breaker)[j]) {
      out.set(j);
    }
  }
  return std::move(out).build();
}

BinaryVector median_center_of(const Dataset& data, std::span<const std::size_t> indices,
                              const BinaryVector* tie_breaker) {
  if (indices.empty()) throw std::invalid_argument("median center of an empty sample");
  const std::size_t dim = data.dim();
  check_tie_breaker(dim, tie_breaker);

  if (!data.weighted()) {
    std::vector<std::uint32_t> ones(dim, 0);
    for (std::size_t i : indices) tally_ones<std::uint32_t>(data.point(i), 1U, ones);
    return majority_from_counts(dim, ones, static_cast<std::uint32_t>(indices.size()),
                                tie_breaker);
  }

  std::vector<BinaryVector> pts;
  std::vector<double> ws;
  pts.reserve(indices.size());
  ws.reserve(indices.size());
  for (std::size_t i : indices) {
    pts.push_back(data.point(i));
    ws.push_back(data.weight(i));
  }
  return median_center({pts, ws}, tie_breaker);
}

double inertia(WeightedSample s, const BinaryVector& x) {
  if (!s.weights.empty() && s.weights.size() != s.points.size()) {
    throw std::invalid_argument("weight count does not match point count");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    const double w = s.weights.empty() ? 1.0 : s.weights[i];
    total += w * static_cast<double>(hamming(s.points[i], x));
  }
  return total;
}

}  // namespace binnms
