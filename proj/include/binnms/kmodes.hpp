#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "binnms/binary_vector.hpp"
#include "binnms/dataset.hpp"

namespace binnms {

struct KModesResult {
  std::vector<int> labels;
  std::vector<BinaryVector> prototypes;
  double total_inertia = 0.0;
  std::size_t iterations = 0;
  std::uint64_t seed = 0;
  bool converged = false;
  // total_inertia of the initial assignment, then after each round.
  std::vector<double> inertia_history;
};

// k-modes with Hamming distance and majority-vote prototypes. Prototypes start
// at k distinct data points drawn with `seed`. Each round recomputes every
// prototype as the median center of its members (ties kept from the previous
// prototype; an emptied cluster is reseeded at the point farthest from its
// prototype), then reassigns every point to its nearest prototype (ties to
// the lower cluster id). Stops when assignments repeat or after max_iter
// rounds. Throws std::invalid_argument when k is zero or exceeds the number of
// distinct points.
KModesResult kmodes_run(const Dataset& data, std::size_t k, std::uint64_t seed,
                        std::size_t max_iter = 100);

// Same iteration from caller-supplied initial prototypes.
KModesResult kmodes_run_from(const Dataset& data, std::vector<BinaryVector> initial,
                             std::size_t max_iter = 100);

// `runs` independent runs with seeds base_seed, base_seed + 1, ...
std::vector<KModesResult> kmodes_repeated(const Dataset& data, std::size_t k, std::size_t runs,
                                          std::uint64_t base_seed, std::size_t max_iter = 100,
                                          unsigned threads = 0);

// Forgy-style initial prototypes: k distinct data points sampled without
// replacement.
std::vector<BinaryVector> kmodes_init(const Dataset& data, std::size_t k, std::uint64_t seed);

}  // namespace binnms
