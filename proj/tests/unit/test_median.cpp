#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <limits>

#include "binnms/errors.hpp"
#include "binnms/median.hpp"
#include "test_support.hpp"

using namespace binnms;

namespace {

std::vector<BinaryVector> pts(std::initializer_list<const char*> bits) {
  std::vector<BinaryVector> out;
  for (const char* b : bits) out.push_back(BinaryVector::from_string(b));
  return out;
}

}  // namespace

TEST_CASE("median center examples") {
  const auto x = BinaryVector::from_string("1011");
  CHECK(median_center({std::vector{x}}) == x);

  const auto three = pts({"10", "11", "01"});
  CHECK(median_center({three}).to_string() == "11");

  const auto tie = pts({"00", "11"});
  CHECK(median_center({tie}).to_string() == "00");
  const auto anchor = BinaryVector::from_string("10");
  CHECK(median_center({tie}, &anchor).to_string() == "10");
}

TEST_CASE("median center errors") {
  std::vector<BinaryVector> none;
  CHECK_THROWS_AS(median_center({none}), std::invalid_argument);
  const auto mixed = pts({"00", "111"});
  CHECK_THROWS_AS(median_center({mixed}), DimensionMismatch);
  const auto two = pts({"00", "11"});
  const std::vector<double> bad{1.0, 0.0};
  CHECK_THROWS_AS(median_center({two, bad}), std::invalid_argument);
  const auto wrong_tb = BinaryVector::from_string("1");
  CHECK_THROWS_AS(median_center({two}, &wrong_tb), DimensionMismatch);
}

TEST_CASE("inertia examples") {
  const auto w = BinaryVector::from_string("0110");
  CHECK(inertia({std::vector{w}}, w) == 0.0);
  CHECK(inertia({pts({"10", "11", "01"})}, BinaryVector::from_string("11")) == 2.0);
  const auto two = pts({"0", "1"});
  const std::vector<double> weights{2.0, 1.0};
  CHECK(inertia({two, weights}, BinaryVector::from_string("0")) == 1.0);
  CHECK_THROWS_AS(inertia({two}, BinaryVector::from_string("00")), DimensionMismatch);
}

TEST_CASE("weighted majority and weighted ties") {
  const auto two = pts({"01", "10"});
  const std::vector<double> heavy_first{3.0, 1.0};
  CHECK(median_center({two, heavy_first}).to_string() == "01");
  const std::vector<double> equal{0.5, 0.5};
  const auto anchor = BinaryVector::from_string("11");
  CHECK(median_center({two, equal}, &anchor).to_string() == "11");
  CHECK(median_center({two, equal}).to_string() == "00");
}

TEST_CASE("unit weights reduce to the raw-count majority") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = testing::random_points(rng, testing::uniform(rng, 1, 15), 9);
    const std::vector<double> ones(p.size(), 1.0);
    CHECK(median_center({p}) == median_center({p, ones}));
  }
}

TEST_CASE("median center is optimal over all 2^d candidates") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> wdist(0.1, 3.0);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t d = testing::uniform(rng, 1, 8);
    const auto p = testing::random_points(rng, testing::uniform(rng, 1, 12), d);
    std::vector<double> w(p.size());
    for (double& x : w) x = wdist(rng);
    const double best = inertia({p, w}, median_center({p, w}));
    double brute = std::numeric_limits<double>::infinity();
    for (std::uint64_t code = 0; code < (1ULL << d); ++code) {
      brute = std::min(brute, inertia({p, w}, BinaryVector::from_words(d, {code})));
    }
    CHECK(best <= brute + 1e-12);
  }
}

TEST_CASE("median_center_of indexes into a dataset") {
  const Dataset data(pts({"000", "011", "111", "100"}));
  const std::vector<std::size_t> idx{1, 2, 3};
  CHECK(median_center_of(data, idx).to_string() == "111");
  const std::vector<std::size_t> pair{0, 2};
  const auto anchor = BinaryVector::from_string("010");
  CHECK(median_center_of(data, pair, &anchor).to_string() == "010");
  CHECK_THROWS_AS(median_center_of(data, std::vector<std::size_t>{}), std::invalid_argument);
}
