#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "binnms/bga.hpp"
#include "binnms/errors.hpp"
#include "test_support.hpp"

using namespace binnms;

namespace {

Dataset make(std::initializer_list<const char*> bits) {
  std::vector<BinaryVector> out;
  for (const char* b : bits) out.push_back(BinaryVector::from_string(b));
  return Dataset(std::move(out));
}

// Sort all distances, keep k1 with index tie-break, vote per component with
// ties kept from x.
BinaryVector brute_step(const Dataset& data, const BinaryVector& x, std::size_t k1) {
  std::vector<std::pair<std::size_t, std::size_t>> all;
  for (std::size_t i = 0; i < data.n(); ++i) {
    std::size_t d = 0;
    for (std::size_t j = 0; j < x.dim(); ++j) d += data[i][j] != x[j];
    all.emplace_back(d, i);
  }
  std::sort(all.begin(), all.end());
  BitWriter out(x.dim());
  for (std::size_t j = 0; j < x.dim(); ++j) {
    std::size_t ones = 0;
    for (std::size_t r = 0; r < k1; ++r) ones += data[all[r].second][j];
    const std::size_t zeros = k1 - ones;
    out.set(j, ones > zeros || (ones == zeros && x[j]));
  }
  return std::move(out).build();
}

}  // namespace

TEST_CASE("median shift step examples") {
  const auto chain = make({"000", "001", "011", "111"});
  CHECK(median_shift_step(chain, BinaryVector::from_string("000"), 2).to_string() == "000");

  const auto ring = make({"111", "110", "101", "011"});
  CHECK(median_shift_step(ring, BinaryVector::from_string("000"), 4).to_string() == "111");

  // k1 = 1 lands on the nearest data point.
  CHECK(median_shift_step(chain, BinaryVector::from_string("010"), 1).to_string() == "000");
  CHECK(median_shift_step(chain, BinaryVector::from_string("110"), 1).to_string() == "111");
}

TEST_CASE("ascend examples") {
  const auto ring = make({"111", "110", "101", "011"});
  const BgaConfig cfg{4, 50};
  auto t = ascend(ring, BinaryVector::from_string("000"), cfg);
  REQUIRE(t.iterates.size() == 3);
  CHECK(t.iterates[0].to_string() == "000");
  CHECK(t.iterates[1].to_string() == "111");
  CHECK(t.iterates[2].to_string() == "111");
  CHECK(t.termination == Termination::fixed_point);
  CHECK(t.steps == 2);

  t = ascend(ring, BinaryVector::from_string("111"), cfg);
  CHECK(t.iterates.size() == 2);
  CHECK(t.steps == 1);
  CHECK(t.termination == Termination::fixed_point);

  t = ascend(ring, BinaryVector::from_string("000"), BgaConfig{4, 1});
  CHECK(t.steps == 1);
  CHECK(t.iterates.size() == 2);
  CHECK(t.termination == Termination::max_iterations);
}

TEST_CASE("iteration loop reports fixed points, cycles and the cap") {
  const auto a = BinaryVector::from_string("01");
  const auto b = BinaryVector::from_string("10");
  const auto flip = [&](const BinaryVector& x) { return x == a ? b : a; };
  auto t = detail::iterate_map(a, 10, flip);
  CHECK(t.termination == Termination::cycle);
  CHECK(t.steps == 2);
  CHECK(t.iterates == std::vector<BinaryVector>{a, b, a});

  t = detail::iterate_map(a, 1, flip);
  CHECK(t.termination == Termination::max_iterations);
  CHECK(t.iterates.size() == 2);

  const auto to_b = [&](const BinaryVector&) { return b; };
  t = detail::iterate_map(a, 10, to_b);
  CHECK(t.termination == Termination::fixed_point);
  CHECK(t.iterates == std::vector<BinaryVector>{a, b, b});
}

TEST_CASE("ascend_all preserves order and handles edge inputs") {
  const auto ring = make({"111", "110", "101", "011"});
  const BgaConfig cfg{4, 50};
  const std::vector<BinaryVector> cands{BinaryVector::from_string("000"),
                                        BinaryVector::from_string("111")};
  const auto all = ascend_all(ring, cands, cfg, 2);
  REQUIRE(all.size() == 2);
  CHECK(all[0].endpoint().to_string() == "111");
  CHECK(all[1].endpoint().to_string() == "111");
  CHECK(all[0].iterates.front().to_string() == "000");

  CHECK(ascend_all(ring, std::vector<BinaryVector>{}, cfg).empty());

  const auto same = make({"0101", "0101", "0101"});
  for (const auto& t : ascend_all(same, same.points(), BgaConfig{2, 10})) {
    CHECK(t.iterates.size() == 2);
    CHECK(t.termination == Termination::fixed_point);
    CHECK(t.endpoint().to_string() == "0101");
  }
}

TEST_CASE("config and dimension errors") {
  const auto ring = make({"111", "110", "101", "011"});
  CHECK_THROWS_AS(ascend(ring, BinaryVector::from_string("000"), BgaConfig{0, 5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(ascend(ring, BinaryVector::from_string("000"), BgaConfig{5, 5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(ascend(ring, BinaryVector::from_string("000"), BgaConfig{2, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(ascend(ring, BinaryVector::from_string("00"), BgaConfig{2, 5}),
                  DimensionMismatch);
}

TEST_CASE("step matches brute force; trajectories satisfy their invariants") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = testing::uniform(rng, 1, 80);
    const std::size_t d = testing::uniform(rng, 1, 40);
    const Dataset data(testing::clustered_points(rng, n, d, 4, 0.15));
    const std::size_t k1 = testing::uniform(rng, 1, n);
    const auto x0 = testing::random_vector(rng, d);
    CHECK(median_shift_step(data, x0, k1) == brute_step(data, x0, k1));

    const BgaConfig cfg{k1, 30};
    const auto t = ascend(data, x0, cfg);
    CHECK(t.steps == t.iterates.size() - 1);
    CHECK(t.steps >= 1);
    CHECK(t.steps <= cfg.j_max);
    for (std::size_t j = 0; j + 1 < t.iterates.size(); ++j) {
      CHECK(t.iterates[j + 1] == brute_step(data, t.iterates[j], k1));
    }
    if (t.termination == Termination::fixed_point) {
      const auto n_it = t.iterates.size();
      CHECK(t.iterates[n_it - 1] == t.iterates[n_it - 2]);
      const auto again = ascend(data, t.endpoint(), cfg);
      CHECK(again.steps == 1);
      CHECK(again.endpoint() == t.endpoint());
    }
  }
}

TEST_CASE("trajectories do not depend on other candidates or thread count") {
  std::mt19937_64 rng(17);
  const Dataset data(testing::clustered_points(rng, 60, 24, 3, 0.1));
  const auto cands = testing::random_points(rng, 20, 24);
  const BgaConfig cfg{7, 50};
  const auto serial = ascend_all(data, cands, cfg, 1);
  const auto threaded = ascend_all(data, cands, cfg, 4);
  for (std::size_t i = 0; i < cands.size(); ++i) {
    const auto alone = ascend(data, cands[i], cfg);
    CHECK(serial[i].iterates == alone.iterates);
    CHECK(threaded[i].iterates == alone.iterates);
  }
}
