#include "binnms/bga.hpp"

#include <stdexcept>
#include <string>

#include "binnms/knn.hpp"
#include "binnms/median.hpp"
#include "binnms/parallel.hpp"

namespace binnms {

std::string_view to_string(Termination t) noexcept {
  switch (t) {
    case Termination::fixed_point:
      return "fixed_point";
    case Termination::max_iterations:
      return "max_iterations";
    case Termination::cycle:
      return "cycle";
  }
  return "unknown";
}

void BgaConfig::validate(std::size_t n) const {
  if (k1 == 0 || k1 > n) {
    throw std::invalid_argument("k1 must lie in [1, n]; got k1=" + std::to_string(k1) +
                                ", n=" + std::to_string(n));
  }
  if (j_max == 0) throw std::invalid_argument("j_max must be at least 1");
}

namespace {

BinaryVector step_with(KnnSearcher& searcher, const Dataset& data, const BinaryVector& x,
                       std::size_t k1) {
  const NeighborSet& nn = searcher.query(x, k1);
  return median_center_of(data, nn.indices, &x);
}

}  // namespace

BinaryVector median_shift_step(const Dataset& data, const BinaryVector& x, std::size_t k1) {
  KnnSearcher searcher(data);
  return step_with(searcher, data, x, k1);
}

namespace detail {

AscentTrajectory ascend_with(KnnSearcher& searcher, const Dataset& data, const BinaryVector& x0,
                             const BgaConfig& cfg) {
  return iterate_map(x0, cfg.j_max, [&](const BinaryVector& x) {
    return step_with(searcher, data, x, cfg.k1);
  });
}

}  // namespace detail

AscentTrajectory ascend(const Dataset& data, const BinaryVector& x0, const BgaConfig& cfg) {
  cfg.validate(data.n());
  data.require_dim(x0);
  KnnSearcher searcher(data);
  return detail::ascend_with(searcher, data, x0, cfg);
}

std::vector<AscentTrajectory> ascend_all(const Dataset& data,
                                         std::span<const BinaryVector> candidates,
                                         const BgaConfig& cfg, unsigned threads) {
  if (candidates.empty()) return {};
  cfg.validate(data.n());
  for (const auto& c : candidates) data.require_dim(c);

  std::vector<AscentTrajectory> out(candidates.size());
  parallel_for_with(
      candidates.size(), threads, [&data] { return KnnSearcher(data); },
      [&](KnnSearcher& searcher, std::size_t i) {
        out[i] = detail::ascend_with(searcher, data, candidates[i], cfg);
      });
  return out;
}

std::vector<BinaryVector> endpoints(std::span<const AscentTrajectory> trajectories) {
  std::vector<BinaryVector> out;
  out.reserve(trajectories.size());
  for (const auto& t : trajectories) out.push_back(t.endpoint());
  return out;
}

}  // namespace binnms
