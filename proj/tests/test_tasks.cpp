#include <gtest/gtest.h>

#include "derand/error.hpp"
#include "derand/generators.hpp"
#include "derand/tasks.hpp"

using namespace derand;
using namespace derand::tasks;

namespace {

TaskInstance make(std::vector<Rational> t1, std::vector<Rational> t2) { return TaskInstance{{t1, t2}, std::nullopt}; }

// Oracle: loads of the two agents (true times) for one bit vector.
std::array<Rational, 2> loads(const TaskInstance& t, const std::vector<int>& bits) {
  std::array<Rational, 2> load{0, 0};
  const auto& truth = t.truth();
  for (int j = 0; j < t.m(); ++j) {
    const int i = bits[j];
    const int other = 1 - i;
    const int taker = t.declared[i][j] <= Rational(4, 3) * t.declared[other][j] ? i : other;
    load[taker] += truth[taker][j];
  }
  return load;
}

Rational expected_oracle(const TaskInstance& t) {
  Rational sum = 0;
  const int m = t.m();
  for (int mask = 0; mask < (1 << m); ++mask) {
    std::vector<int> bits;
    for (int j = 0; j < m; ++j) bits.push_back((mask >> j) & 1);
    const auto l = loads(t, bits);
    sum += std::max(l[0], l[1]);
  }
  return sum / (1 << m);
}

Rational optimal_oracle(const TimeMatrix& t) {
  const int m = static_cast<int>(t[0].size());
  std::optional<Rational> best;
  for (int mask = 0; mask < (1 << m); ++mask) {
    Rational a = 0;
    Rational b = 0;
    for (int j = 0; j < m; ++j) ((mask >> j) & 1 ? b : a) += ((mask >> j) & 1 ? t[1][j] : t[0][j]);
    const auto span = std::max(a, b);
    if (!best || span < *best) best = span;
  }
  return *best;
}

}  // namespace

TEST(BiasedMinWork, Examples) {
  const auto one = biased_min_work(make({3}, {3}), std::vector<int>{0});
  EXPECT_EQ(one.a1, std::vector<int>{1});
  EXPECT_TRUE(one.a2.empty());
  EXPECT_EQ(one.p1, 4);
  EXPECT_EQ(one.p2, 0);

  const auto two = biased_min_work(make({1, 2}, {2, 1}), std::vector<int>{0, 0});
  EXPECT_EQ(two.a1, std::vector<int>{1});
  EXPECT_EQ(two.p1, Rational(8, 3));
  EXPECT_EQ(two.a2, std::vector<int>{2});
  EXPECT_EQ(two.p2, Rational(3, 2));

  for (int bit : {0, 1}) {
    EXPECT_EQ(biased_min_work(make({1}, {100}), std::vector<int>{bit}).a1, std::vector<int>{1});
  }
}

TEST(BiasedMinWork, Validates) {
  EXPECT_THROW(biased_min_work(make({1}, {1}), std::vector<int>{2}), RangeError);
  EXPECT_THROW(biased_min_work(make({1}, {1}), std::vector<int>{0, 1}), ValidationError);
  EXPECT_THROW(biased_min_work(make({1, 2}, {1}), std::vector<int>{0}), ValidationError);
  EXPECT_THROW(biased_min_work(make({0}, {1}), std::vector<int>{0}), ValidationError);
}

TEST(DerandBiasedMinWork, XorOfPairs) {
  const auto t = make({1, 2}, {2, 1});
  using Pairs = std::vector<std::array<int, 2>>;
  EXPECT_EQ(derand_biased_min_work(t, Pairs{{0, 0}, {0, 0}}), biased_min_work(t, std::vector<int>{0, 0}));
  EXPECT_EQ(derand_biased_min_work(t, Pairs{{1, 1}, {1, 1}}), biased_min_work(t, std::vector<int>{0, 0}));
  EXPECT_EQ(derand_biased_min_work(t, Pairs{{0, 1}, {1, 0}}), biased_min_work(t, std::vector<int>{1, 1}));
}

TEST(AgentUtility, Examples) {
  const auto one = biased_min_work(make({3}, {3}), std::vector<int>{0});
  EXPECT_EQ(agent_utility(one, 1, make({3}, {3}).declared), 1);
  EXPECT_EQ(agent_utility(one, 2, make({3}, {3}).declared), 0);
  const auto t = make({1, 2}, {2, 1});
  EXPECT_EQ(agent_utility(biased_min_work(t, std::vector<int>{0, 0}), 2, t.declared), Rational(1, 2));
}

TEST(Makespan, Examples) {
  EXPECT_EQ(expected_makespan_uniform(make({2}, {2})), 2);
  EXPECT_EQ(expected_makespan_uniform(make({1}, {100})), 1);
  EXPECT_EQ(expected_makespan_uniform(make({1, 1}, {1, 1})), Rational(3, 2));
  EXPECT_EQ(optimal_makespan(make({1, 2}, {2, 1}).declared), 1);
  EXPECT_EQ(optimal_makespan(make({2}, {2}).declared), 2);
  EXPECT_EQ(optimal_makespan(make({1, 1}, {1, 1}).declared), 1);
}

TEST(Makespan, MatchesOraclesAndSevenFourthsBound) {
  Rng rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const auto t = gen::random_tasks(uniform_int(rng, 1, 8), rng);
    const auto e = expected_makespan_uniform(t);
    const auto opt = optimal_makespan(t.declared);
    EXPECT_EQ(e, expected_oracle(t));
    EXPECT_EQ(opt, optimal_oracle(t.declared));
    EXPECT_LE(e, Rational(7, 4) * opt);
  }
}

TEST(Makespan, TrueTimesDriveCost) {
  TaskInstance t = make({1}, {100});
  t.true_times = TimeMatrix{{{5}, {100}}};
  EXPECT_EQ(expected_makespan_uniform(t), 5);
  EXPECT_EQ(expected_makespan_uniform(t), expected_oracle(t));
}

TEST(Makespan, CapacityLimit) {
  std::vector<Rational> row(kMaxExhaustiveTasks + 1, Rational(1));
  EXPECT_THROW(expected_makespan_uniform(make(row, row)), CapacityError);
  EXPECT_THROW(optimal_makespan(make(row, row).declared), CapacityError);
}

// For each fixed bit vector the rule is a threshold rule with a payment
// independent of the agent's own report, so no lie pays.
TEST(Truthfulness, NoProfitableMisreportOnGrid) {
  Rng rng(32);
  for (int trial = 0; trial < 60; ++trial) {
    const int m = uniform_int(rng, 1, 4);
    const auto t = gen::random_tasks(m, rng);
    for (int agent = 0; agent < 2; ++agent) {
      for (int j = 0; j < m; ++j) {
        for (int k = 1; k <= 24; ++k) {
          auto lie = t;
          lie.true_times = t.declared;
          lie.declared[agent][j] = Rational(k, 4);
          for (int mask = 0; mask < (1 << m); ++mask) {
            std::vector<int> bits;
            for (int r = 0; r < m; ++r) bits.push_back((mask >> r) & 1);
            EXPECT_LE(agent_utility(biased_min_work(lie, bits), agent + 1, t.declared),
                      agent_utility(biased_min_work(t, bits), agent + 1, t.declared));
          }
        }
      }
    }
  }
}
