#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "derand/rational.hpp"
#include "derand/verdict.hpp"

namespace derand::modgame {

/// Exact probability vector over the integers [0, size()). Weights are
/// non-negative and sum to exactly one.
class MixedStrategy {
 public:
  explicit MixedStrategy(std::vector<Rational> weights);

  static MixedStrategy uniform(int modulus);
  static MixedStrategy point(int modulus, int value);
  /// Missing keys have weight zero.
  static MixedStrategy from_map(int modulus, const std::map<int, Rational>& weights);

  int size() const { return static_cast<int>(weights_.size()); }
  /// Probability of `value`; zero outside [0, size()).
  Rational operator[](int value) const;
  const std::vector<Rational>& weights() const { return weights_; }

  /// Largest value with positive weight.
  int max_support() const;
  bool is_uniform() const;

  bool operator==(const MixedStrategy&) const = default;

 private:
  std::vector<Rational> weights_;
};

/// One mixed strategy per agent; a pure strategy is a point mass.
using Profile = std::vector<MixedStrategy>;

/// n agents each pick an integer in [0, modulus); the outcome is the sum mod
/// modulus. Utilities are exact per-outcome rationals for every agent.
class ModGame {
 public:
  ModGame(int modulus, std::vector<std::vector<Rational>> utilities);

  int n_agents() const { return static_cast<int>(utilities_.size()); }
  int modulus() const { return modulus_; }
  const Rational& utility(std::size_t agent, int outcome) const { return utilities_.at(agent).at(outcome); }
  const std::vector<std::vector<Rational>>& utilities() const { return utilities_; }

 private:
  int modulus_;
  std::vector<std::vector<Rational>> utilities_;
};

/// Two-agent parity game. Agent 0 is the even agent (wins on outcome 0),
/// agent 1 the odd agent (wins on outcome 1).
ModGame parity_game(const Rational& win, const Rational& loss);

/// Agent i prefers outcome (i mod modulus): utility 1 there, 0 elsewhere.
ModGame distinct_preference_game(int n_agents, int modulus);

int outcome_sum(std::span<const std::int64_t> plays, std::int64_t modulus);
BigInt outcome_sum(std::span<const BigInt> plays, const BigInt& modulus);

/// Exact distribution of the sum mod `modulus` of independent plays.
MixedStrategy outcome_distribution(const Profile& profile, int modulus);

Rational expected_utility(const ModGame& game, const Profile& profile, std::size_t agent);

/// Passes iff no agent has a pure deviation that strictly raises its
/// expected utility. The failing witness holds the agent, its best pure
/// deviation and the utility gain.
Verdict verify_nash(const ModGame& game, const Profile& profile);

}  // namespace derand::modgame
