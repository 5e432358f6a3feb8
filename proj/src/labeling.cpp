#include "binnms/labeling.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "binnms/errors.hpp"
#include "binnms/median.hpp"

namespace binnms {

std::string_view to_string(EpsilonMode m) noexcept {
  return m == EpsilonMode::mean_all ? "mean_all" : "kth_only";
}

EpsilonMode parse_epsilon_mode(std::string_view s) {
  if (s == "mean_all") return EpsilonMode::mean_all;
  if (s == "kth_only") return EpsilonMode::kth_only;
  throw std::invalid_argument("epsilon mode must be mean_all or kth_only, got '" +
                              std::string(s) + "'");
}

namespace {

// Distinct points in order of first appearance, with multiplicities and the
// mapping from each input index to its distinct slot.
struct Distinct {
  std::vector<const BinaryVector*> points;
  std::vector<std::size_t> counts;
  std::vector<std::size_t> slot_of;
};

Distinct dedupe(std::span<const BinaryVector> points) {
  Distinct out;
  out.slot_of.reserve(points.size());
  std::unordered_map<BinaryVector, std::size_t, BinaryVectorHash> index;
  const std::size_t dim = points.empty() ? 0 : points.front().dim();
  for (const auto& p : points) {
    if (p.dim() != dim) throw DimensionMismatch(dim, p.dim());
    auto [it, inserted] = index.try_emplace(p, out.points.size());
    if (inserted) {
      out.points.push_back(&p);
      out.counts.push_back(0);
    }
    ++out.counts[it->second];
    out.slot_of.push_back(it->second);
  }
  return out;
}

}  // namespace

double compute_epsilon(std::span<const BinaryVector> points, std::size_t k2, EpsilonMode mode) {
  const std::size_t m = points.size();
  if (m < 2) return 0.0;
  if (k2 == 0 || k2 >= m) {
    throw std::invalid_argument("k2 must lie in [1, m-1]; got k2=" + std::to_string(k2) +
                                ", m=" + std::to_string(m));
  }
  const Distinct u = dedupe(points);
  const std::size_t dim = points.front().dim();
  const std::size_t slots = u.points.size();

  // Per distinct point, a histogram of distances to every other input point;
  // identical copies of the point itself sit at distance 0.
  std::vector<std::size_t> hist(dim + 1);
  double total = 0.0;
  for (std::size_t a = 0; a < slots; ++a) {
    std::fill(hist.begin(), hist.end(), 0);
    hist[0] = u.counts[a] - 1;
    for (std::size_t b = 0; b < slots; ++b) {
      if (b != a) hist[hamming_unchecked(*u.points[a], *u.points[b])] += u.counts[b];
    }
    std::size_t remaining = k2;
    double sum = 0.0;
    std::size_t kth = 0;
    for (std::size_t d = 0; remaining > 0; ++d) {
      const std::size_t take = std::min(remaining, hist[d]);
      sum += static_cast<double>(take * d);
      remaining -= take;
      if (take > 0) kth = d;
    }
    const double per_point =
        mode == EpsilonMode::mean_all ? sum / static_cast<double>(k2) : static_cast<double>(kth);
    total += per_point * static_cast<double>(u.counts[a]);
  }
  return total / static_cast<double>(m);
}

ClusterLabeling label_clusters(std::span<const BinaryVector> converged, double epsilon) {
  ClusterLabeling out;
  if (converged.empty()) return out;
  const Distinct u = dedupe(converged);
  const std::size_t slots = u.points.size();

  // Seed-and-grow over distinct points: each seed is the earliest point not
  // yet reached, so cluster ids follow first appearance in the input.
  constexpr int kUnset = -1;
  std::vector<int> slot_label(slots, kUnset);
  std::vector<std::size_t> frontier;
  int next_label = 0;
  for (std::size_t seed = 0; seed < slots; ++seed) {
    if (slot_label[seed] != kUnset) continue;
    slot_label[seed] = next_label;
    frontier.assign(1, seed);
    while (!frontier.empty()) {
      const std::size_t a = frontier.back();
      frontier.pop_back();
      for (std::size_t b = 0; b < slots; ++b) {
        if (slot_label[b] != kUnset) continue;
        if (static_cast<double>(hamming_unchecked(*u.points[a], *u.points[b])) <= epsilon) {
          slot_label[b] = next_label;
          frontier.push_back(b);
        }
      }
    }
    ++next_label;
  }

  out.num_clusters = static_cast<std::size_t>(next_label);
  out.labels.reserve(converged.size());
  for (std::size_t s : u.slot_of) out.labels.push_back(slot_label[s]);

  std::vector<std::vector<BinaryVector>> members(out.num_clusters);
  for (std::size_t i = 0; i < converged.size(); ++i) {
    members[static_cast<std::size_t>(out.labels[i])].push_back(converged[i]);
  }
  out.prototypes.reserve(out.num_clusters);
  out.sizes.reserve(out.num_clusters);
  for (const auto& cluster : members) {
    out.prototypes.push_back(median_center({cluster}));
    out.sizes.push_back(cluster.size());
  }
  return out;
}

}  // namespace binnms
