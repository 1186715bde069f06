#include <gtest/gtest.h>

#include "derand/error.hpp"
#include "derand/generators.hpp"
#include "derand/simple_mechs.hpp"

using namespace derand;
using namespace derand::simple;

namespace {

std::vector<DictatorBallot> ballots(std::vector<std::int64_t> ints, std::vector<std::string> cands) {
  std::vector<DictatorBallot> out;
  for (std::size_t i = 0; i < ints.size(); ++i) out.push_back({ints[i], cands[i]});
  return out;
}

std::vector<FacilityReport> reports(std::vector<std::int64_t> ints, std::vector<Rational> pos) {
  std::vector<FacilityReport> out;
  for (std::size_t i = 0; i < ints.size(); ++i) out.push_back({ints[i], pos[i]});
  return out;
}

// Oracle: expected max cost of left/mid/right with weights 1/4, 1/2, 1/4
// over the optimum (half the spread).
Rational ratio_oracle(const std::vector<Rational>& pos) {
  const auto lo = *std::min_element(pos.begin(), pos.end());
  const auto hi = *std::max_element(pos.begin(), pos.end());
  if (lo == hi) return 1;
  auto cost = [&](const Rational& y) { return std::max(y - lo, hi - y); };
  const Rational expected = cost(lo) / 4 + cost((lo + hi) / 2) / 2 + cost(hi) / 4;
  return expected / ((hi - lo) / 2);
}

}  // namespace

TEST(Dictator, Examples) {
  EXPECT_EQ(derand_dictator(ballots({0, 0, 0}, {"A", "B", "C"})), "A");
  EXPECT_EQ(derand_dictator(ballots({1, 2, 2}, {"A", "B", "C"})), "C");
  EXPECT_EQ(derand_dictator(ballots({0}, {"A"})), "A");
}

TEST(Dictator, Validates) {
  EXPECT_THROW(derand_dictator({}), ValidationError);
  EXPECT_THROW(derand_dictator(ballots({0, 2}, {"A", "B"})), RangeError);
}

TEST(Dictator, OwnIntegerCyclesThroughDictators) {
  auto b = ballots({2, 0, 1, 3}, {"A", "B", "C", "D"});
  for (std::size_t agent = 0; agent < b.size(); ++agent) {
    std::vector<bool> seen(b.size(), false);
    auto copy = b;
    for (std::int64_t x = 0; x < 4; ++x) {
      copy[agent].game_integer = x;
      seen[dictator_index(copy)] = true;
    }
    EXPECT_EQ(std::count(seen.begin(), seen.end(), true), 4);
  }
}

TEST(Lrm, Examples) {
  EXPECT_EQ(derand_lrm(reports({1, 0}, {0, 1})), Rational(1, 2));
  EXPECT_EQ(derand_lrm(reports({2, 1}, {0, 1})), 1);
  EXPECT_EQ(derand_lrm(reports({0, 0}, {0, 1})), 0);
  EXPECT_EQ(derand_lrm(reports({2, 0}, {0, 1})), Rational(1, 2));
  EXPECT_EQ(derand_lrm(reports({3, 2, 1}, {Rational(7, 3), Rational(7, 3), Rational(7, 3)})), Rational(7, 3));
  EXPECT_THROW(derand_lrm(reports({4, 0}, {0, 1})), RangeError);
}

TEST(Lrm, MaxCostExamples) {
  const std::vector<Rational> two{0, 1};
  EXPECT_EQ(max_cost(Rational(1, 2), two), Rational(1, 2));
  EXPECT_EQ(max_cost(0, two), 1);
  EXPECT_EQ(max_cost(5, std::vector<Rational>{5}), 0);
}

TEST(Lrm, RatioExamples) {
  EXPECT_EQ(lrm_expected_ratio(std::vector<Rational>{0, 1}), Rational(3, 2));
  EXPECT_EQ(lrm_expected_ratio(std::vector<Rational>{5, 5, 5}), 1);
  EXPECT_EQ(lrm_expected_ratio(std::vector<Rational>{0, Rational(1, 2), 1}), Rational(3, 2));
}

TEST(Lrm, RatioMatchesOracleOnRandomInstances) {
  Rng rng(21);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto pos = gen::random_positions(uniform_int(rng, 2, 8), rng);
    EXPECT_EQ(lrm_expected_ratio(pos), ratio_oracle(pos));
    EXPECT_EQ(lrm_expected_ratio(pos), Rational(3, 2));
  }
}
