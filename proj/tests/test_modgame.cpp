#include <gtest/gtest.h>

#include "derand/error.hpp"
#include "derand/generators.hpp"
#include "derand/modgame.hpp"

using namespace derand;
using namespace derand::modgame;

namespace {

// Oracle: enumerate every joint play and add its probability to the sum.
std::vector<Rational> brute_distribution(const Profile& p, int m) {
  std::vector<Rational> out(m, Rational(0));
  std::vector<int> plays(p.size(), 0);
  for (;;) {
    Rational w = 1;
    long sum = 0;
    for (std::size_t a = 0; a < p.size(); ++a) {
      w *= p[a][plays[a]];
      sum += plays[a];
    }
    out[sum % m] += w;
    std::size_t k = 0;
    while (k < p.size() && ++plays[k] == p[k].size()) plays[k++] = 0;
    if (k == p.size()) break;
  }
  return out;
}

MixedStrategy half_on(int m, int x, int y) { return MixedStrategy::from_map(m, {{x, Rational(1, 2)}, {y, Rational(1, 2)}}); }

}  // namespace

TEST(MixedStrategy, Validates) {
  EXPECT_THROW(MixedStrategy({Rational(1, 2), Rational(1, 3)}), ValidationError);
  EXPECT_THROW(MixedStrategy({Rational(3, 2), Rational(-1, 2)}), ValidationError);
  EXPECT_TRUE(MixedStrategy::uniform(5).is_uniform());
  EXPECT_FALSE(MixedStrategy::point(5, 2).is_uniform());
  EXPECT_EQ(MixedStrategy::point(5, 2)[2], 1);
  EXPECT_EQ(MixedStrategy::point(5, 2)[7], 0);
  EXPECT_EQ(MixedStrategy::point(5, 2).max_support(), 2);
}

TEST(OutcomeSum, Examples) {
  EXPECT_EQ(outcome_sum(std::vector<std::int64_t>{0, 0}, 2), 0);
  EXPECT_EQ(outcome_sum(std::vector<std::int64_t>{1, 1}, 2), 0);
  EXPECT_EQ(outcome_sum(std::vector<std::int64_t>{3, 2, 3}, 4), 0);
  EXPECT_EQ(outcome_sum(std::vector<BigInt>{BigInt(5), BigInt(4)}, BigInt(6)), 3);
}

TEST(OutcomeSum, OutOfRangeNamesAgent) {
  try {
    outcome_sum(std::vector<std::int64_t>{1, 4, 0}, 4);
    FAIL() << "expected RangeError";
  } catch (const RangeError& e) {
    EXPECT_NE(std::string(e.what()).find("agent 1"), std::string::npos) << e.what();
  }
  EXPECT_THROW(outcome_sum(std::vector<std::int64_t>{-1}, 4), RangeError);
}

TEST(OutcomeDistribution, Examples) {
  EXPECT_THROW(outcome_distribution({}, 3), ValidationError);
  const Profile zeros{MixedStrategy::point(3, 0), MixedStrategy::point(3, 0)};
  EXPECT_EQ(outcome_distribution(zeros, 3), MixedStrategy::point(3, 0));
  const Profile example{half_on(4, 0, 1), half_on(4, 0, 1), half_on(4, 0, 2), half_on(4, 0, 2)};
  EXPECT_EQ(outcome_distribution(example, 4), MixedStrategy::uniform(4));
}

TEST(OutcomeDistribution, MatchesBruteForce) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = uniform_int(rng, 2, 7);
    Profile p;
    for (int a = uniform_int(rng, 1, 4); a > 0; --a) p.push_back(gen::random_strategy(m, rng));
    EXPECT_EQ(outcome_distribution(p, m).weights(), brute_distribution(p, m));
  }
}

TEST(OutcomeDistribution, AnyUniformAgentMakesItUniform) {
  Rng rng(12);
  for (int m = 2; m <= 12; ++m) {
    for (int trial = 0; trial < 30; ++trial) {
      Profile p;
      const int n = uniform_int(rng, 1, 4);
      for (int a = 0; a < n; ++a) p.push_back(gen::random_strategy(m, rng));
      p[uniform_int(rng, 0, n - 1)] = MixedStrategy::uniform(m);
      EXPECT_TRUE(outcome_distribution(p, m).is_uniform());
    }
  }
}

TEST(ExpectedUtility, Examples) {
  const ModGame constant(3, {{Rational(7, 2), Rational(7, 2), Rational(7, 2)}, {0, 0, 0}});
  Rng rng(1);
  const Profile any{gen::random_strategy(3, rng), gen::random_strategy(3, rng)};
  EXPECT_EQ(expected_utility(constant, any, 0), Rational(7, 2));

  const auto parity = parity_game(1, 0);
  const auto even_p = [](Rational p) { return MixedStrategy(std::vector<Rational>{1 - p, p}); };
  EXPECT_EQ(expected_utility(parity, {even_p(Rational(1, 2)), MixedStrategy::point(2, 0)}, 1), Rational(1, 2));
  EXPECT_EQ(expected_utility(parity, {even_p(Rational(1, 4)), MixedStrategy::point(2, 1)}, 1), Rational(3, 4));
}

TEST(ExpectedUtility, MatchesBruteForce) {
  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = uniform_int(rng, 2, 6);
    const int n = uniform_int(rng, 1, 3);
    const auto game = gen::random_game(n, m, rng);
    Profile p;
    for (int a = 0; a < n; ++a) p.push_back(gen::random_strategy(m, rng));
    const auto d = brute_distribution(p, m);
    for (int a = 0; a < n; ++a) {
      Rational want = 0;
      for (int k = 0; k < m; ++k) want += d[k] * game.utility(a, k);
      EXPECT_EQ(expected_utility(game, p, a), want);
    }
  }
}

TEST(VerifyNash, ParityGame) {
  const auto parity = parity_game(1, 0);
  EXPECT_TRUE(verify_nash(parity, {MixedStrategy::uniform(2), MixedStrategy::uniform(2)}));
  const auto v = verify_nash(parity, {MixedStrategy::point(2, 0), MixedStrategy::point(2, 0)});
  ASSERT_FALSE(v);
  // Outcome 0 favours the even agent; the odd agent gains by switching.
  EXPECT_EQ(v.witness["agent"], 1);
  EXPECT_EQ(v.witness["deviation"], 1);
  EXPECT_EQ(v.witness["delta"], "1/1");
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      EXPECT_FALSE(verify_nash(parity, {MixedStrategy::point(2, x), MixedStrategy::point(2, y)}));
    }
  }
}

TEST(VerifyNash, DistinctPreferenceExample) {
  const Profile p{half_on(4, 0, 1), half_on(4, 0, 1), half_on(4, 0, 2), half_on(4, 0, 2)};
  EXPECT_TRUE(verify_nash(distinct_preference_game(4, 4), p));
}

TEST(VerifyNash, QuasiUniformProfilesAreEquilibria) {
  Rng rng(14);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = uniform_int(rng, 2, 4);
    const int m = uniform_int(rng, 2, 8);
    const auto game = gen::random_game(n, m, rng);
    Profile p;
    for (int a = 0; a < n; ++a) p.push_back(gen::random_strategy(m, rng));
    const auto pick = random_ranking(n, rng);
    p[pick[0]] = p[pick[1]] = MixedStrategy::uniform(m);
    EXPECT_TRUE(verify_nash(game, p));
  }
}

// Grid smoke test: in the parity game with win > loss, the only profile on
// a 1/8 grid with no profitable pure deviation is the uniform one.
TEST(VerifyNash, ParityGridHasOnlyUniformEquilibrium) {
  const auto parity = parity_game(3, 1);
  int found = 0;
  for (int a = 0; a <= 8; ++a) {
    for (int b = 0; b <= 8; ++b) {
      const MixedStrategy x(std::vector<Rational>{Rational(8 - a, 8), Rational(a, 8)});
      const MixedStrategy y(std::vector<Rational>{Rational(8 - b, 8), Rational(b, 8)});
      if (verify_nash(parity, {x, y})) {
        ++found;
        EXPECT_EQ(a, 4);
        EXPECT_EQ(b, 4);
      }
    }
  }
  EXPECT_EQ(found, 1);
}

TEST(VerifyNash, RejectsMismatchedProfile) {
  EXPECT_THROW(verify_nash(parity_game(1, 0), {MixedStrategy::uniform(2)}), ValidationError);
}
