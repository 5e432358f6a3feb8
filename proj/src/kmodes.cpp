#include "binnms/kmodes.hpp"

#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>

#include "binnms/errors.hpp"
#include "binnms/median.hpp"
#include "binnms/parallel.hpp"

namespace binnms {

namespace {

// Nearest prototype per point, lowest cluster id on ties.
std::vector<int> assign(const Dataset& data, std::span<const BinaryVector> prototypes) {
  std::vector<int> labels(data.n());
  for (std::size_t i = 0; i < data.n(); ++i) {
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (std::size_t c = 0; c < prototypes.size(); ++c) {
      const std::size_t d = hamming_unchecked(data[i], prototypes[c]);
      if (d < best) {
        best = d;
        labels[i] = static_cast<int>(c);
      }
    }
  }
  return labels;
}

double total_inertia(const Dataset& data, std::span<const int> labels,
                     std::span<const BinaryVector> prototypes) {
  double total = 0.0;
  for (std::size_t i = 0; i < data.n(); ++i) {
    total += data.weight(i) *
             static_cast<double>(hamming_unchecked(data[i], prototypes[labels[i]]));
  }
  return total;
}

void update(const Dataset& data, std::span<const int> labels,
            std::vector<BinaryVector>& prototypes) {
  std::vector<std::vector<std::size_t>> members(prototypes.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    members[static_cast<std::size_t>(labels[i])].push_back(i);
  }
  for (std::size_t c = 0; c < prototypes.size(); ++c) {
    if (!members[c].empty()) {
      prototypes[c] = median_center_of(data, members[c], &prototypes[c]);
      continue;
    }
    // Emptied cluster: move it to the point farthest from where it was.
    std::size_t far = 0;
    std::size_t far_dist = 0;
    for (std::size_t i = 0; i < data.n(); ++i) {
      const std::size_t d = hamming_unchecked(data[i], prototypes[c]);
      if (d > far_dist) {
        far_dist = d;
        far = i;
      }
    }
    prototypes[c] = data[far];
  }
}

}  // namespace

std::vector<BinaryVector> kmodes_init(const Dataset& data, std::size_t k, std::uint64_t seed) {
  if (k == 0) throw std::invalid_argument("k-modes needs k >= 1");
  std::vector<std::size_t> distinct;
  {
    std::unordered_set<BinaryVector, BinaryVectorHash> seen;
    for (std::size_t i = 0; i < data.n(); ++i) {
      if (seen.insert(data[i]).second) distinct.push_back(i);
    }
  }
  if (k > distinct.size()) {
    throw std::invalid_argument("k=" + std::to_string(k) + " exceeds the " +
                                std::to_string(distinct.size()) + " distinct points");
  }
  // Partial Fisher-Yates over the distinct representatives.
  std::mt19937_64 rng(seed);
  std::vector<BinaryVector> out;
  out.reserve(k);
  for (std::size_t c = 0; c < k; ++c) {
    std::uniform_int_distribution<std::size_t> pick(c, distinct.size() - 1);
    std::swap(distinct[c], distinct[pick(rng)]);
    out.push_back(data[distinct[c]]);
  }
  return out;
}

KModesResult kmodes_run_from(const Dataset& data, std::vector<BinaryVector> initial,
                             std::size_t max_iter) {
  if (initial.empty()) throw std::invalid_argument("k-modes needs at least one prototype");
  if (initial.size() > data.n()) throw std::invalid_argument("k-modes needs k <= n");
  if (max_iter == 0) throw std::invalid_argument("k-modes needs max_iter >= 1");
  for (const auto& p : initial) data.require_dim(p);

  KModesResult r;
  r.prototypes = std::move(initial);
  r.labels = assign(data, r.prototypes);
  r.inertia_history.push_back(total_inertia(data, r.labels, r.prototypes));
  for (std::size_t it = 1; it <= max_iter; ++it) {
    update(data, r.labels, r.prototypes);
    r.iterations = it;
    std::vector<int> next = assign(data, r.prototypes);
    if (next == r.labels) {
      r.converged = true;
      r.inertia_history.push_back(total_inertia(data, r.labels, r.prototypes));
      break;
    }
    // On the last permitted round keep the labels the prototypes were built
    // from, so each prototype stays the median of its members.
    if (it < max_iter) r.labels = std::move(next);
    r.inertia_history.push_back(total_inertia(data, r.labels, r.prototypes));
  }
  r.total_inertia = r.inertia_history.back();
  return r;
}

KModesResult kmodes_run(const Dataset& data, std::size_t k, std::uint64_t seed,
                        std::size_t max_iter) {
  KModesResult r = kmodes_run_from(data, kmodes_init(data, k, seed), max_iter);
  r.seed = seed;
  return r;
}

std::vector<KModesResult> kmodes_repeated(const Dataset& data, std::size_t k, std::size_t runs,
                                          std::uint64_t base_seed, std::size_t max_iter,
                                          unsigned threads) {
  if (runs == 0) throw std::invalid_argument("k-modes needs runs >= 1");
  std::vector<KModesResult> out(runs);
  parallel_for(runs, threads,
               [&](std::size_t r) { out[r] = kmodes_run(data, k, base_seed + r, max_iter); });
  return out;
}

}  // namespace binnms
