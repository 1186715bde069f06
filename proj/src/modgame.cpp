#include "derand/modgame.hpp"

#include <string>

#include "derand/error.hpp"

namespace derand::modgame {

namespace {

std::vector<Rational> point_weights(int modulus) { return std::vector<Rational>(modulus, Rational(0)); }

void check_modulus(std::int64_t modulus) {
  if (modulus < 1) throw RangeError("modulus must be at least 1, got " + std::to_string(modulus));
}

void check_support(const MixedStrategy& s, int modulus, std::size_t agent) {
  if (s.max_support() >= modulus) {
    throw RangeError("strategy of agent " + std::to_string(agent) + " puts weight on " +
                     std::to_string(s.max_support()) + ", outside [0," + std::to_string(modulus) + ")");
  }
}

void check_profile(const ModGame& game, const Profile& profile) {
  if (profile.size() != static_cast<std::size_t>(game.n_agents())) {
    throw ValidationError("profile has " + std::to_string(profile.size()) + " strategies for " +
                          std::to_string(game.n_agents()) + " agents");
  }
  for (std::size_t i = 0; i < profile.size(); ++i) check_support(profile[i], game.modulus(), i);
}

// Cyclic convolution of two distributions over [0, modulus).
std::vector<Rational> convolve(const std::vector<Rational>& acc, const MixedStrategy& s, int modulus) {
  std::vector<Rational> out(modulus, Rational(0));
  for (int a = 0; a < modulus; ++a) {
    if (acc[a] == 0) continue;
    for (int b = 0; b < s.size(); ++b) {
      const Rational& w = s.weights()[b];
      if (w == 0) continue;
      out[(a + b) % modulus] += acc[a] * w;
    }
  }
  return out;
}

// Distribution of the others' sum when `skip` is left out.
std::vector<Rational> others_distribution(const Profile& profile, std::size_t skip, int modulus) {
  std::vector<Rational> acc = point_weights(modulus);
  acc[0] = 1;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (i != skip) acc = convolve(acc, profile[i], modulus);
  }
  return acc;
}

// Expected utility of each pure play against the others' sum distribution.
std::vector<Rational> pure_play_utilities(const ModGame& game, std::size_t agent, const std::vector<Rational>& others) {
  const int m = game.modulus();
  std::vector<Rational> eu(m, Rational(0));
  for (int k = 0; k < m; ++k) {
    for (int s = 0; s < m; ++s) {
      if (others[s] != 0) eu[k] += others[s] * game.utility(agent, (s + k) % m);
    }
  }
  return eu;
}

}  // namespace

MixedStrategy::MixedStrategy(std::vector<Rational> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw ValidationError("mixed strategy needs at least one outcome");
  Rational total = 0;
  for (std::size_t v = 0; v < weights_.size(); ++v) {
    if (weights_[v] < 0) {
      throw ValidationError("negative weight " + format_rational(weights_[v]) + " on " + std::to_string(v));
    }
    total += weights_[v];
  }
  if (total != 1) throw ValidationError("weights sum to " + format_rational(total) + ", not 1");
}

MixedStrategy MixedStrategy::uniform(int modulus) {
  check_modulus(modulus);
  return MixedStrategy(std::vector<Rational>(modulus, Rational(1, modulus)));
}

MixedStrategy MixedStrategy::point(int modulus, int value) {
  check_modulus(modulus);
  if (value < 0 || value >= modulus) {
    throw RangeError("point mass at " + std::to_string(value) + " outside [0," + std::to_string(modulus) + ")");
  }
  auto w = point_weights(modulus);
  w[value] = 1;
  return MixedStrategy(std::move(w));
}

MixedStrategy MixedStrategy::from_map(int modulus, const std::map<int, Rational>& weights) {
  check_modulus(modulus);
  auto w = point_weights(modulus);
  for (const auto& [value, p] : weights) {
    if (value < 0 || value >= modulus) {
      throw RangeError("weight on " + std::to_string(value) + " outside [0," + std::to_string(modulus) + ")");
    }
    w[value] = p;
  }
  return MixedStrategy(std::move(w));
}

Rational MixedStrategy::operator[](int value) const {
  if (value < 0 || value >= size()) return 0;
  return weights_[value];
}

int MixedStrategy::max_support() const {
  for (int v = size() - 1; v >= 0; --v) {
    if (weights_[v] != 0) return v;
  }
  return 0;
}

bool MixedStrategy::is_uniform() const {
  const Rational u(1, size());
  for (const auto& w : weights_) {
    if (w != u) return false;
  }
  return true;
}

ModGame::ModGame(int modulus, std::vector<std::vector<Rational>> utilities)
    : modulus_(modulus), utilities_(std::move(utilities)) {
  check_modulus(modulus_);
  if (utilities_.empty()) throw ValidationError("game needs at least one agent");
  for (std::size_t i = 0; i < utilities_.size(); ++i) {
    if (utilities_[i].size() != static_cast<std::size_t>(modulus_)) {
      throw ValidationError("agent " + std::to_string(i) + " has " + std::to_string(utilities_[i].size()) +
                            " utilities for " + std::to_string(modulus_) + " outcomes");
    }
  }
}

ModGame parity_game(const Rational& win, const Rational& loss) {
  return ModGame(2, {{win, loss}, {loss, win}});
}

ModGame distinct_preference_game(int n_agents, int modulus) {
  check_modulus(modulus);
  std::vector<std::vector<Rational>> u(n_agents, std::vector<Rational>(modulus, Rational(0)));
  for (int i = 0; i < n_agents; ++i) u[i][i % modulus] = 1;
  return ModGame(modulus, std::move(u));
}

int outcome_sum(std::span<const std::int64_t> plays, std::int64_t modulus) {
  check_modulus(modulus);
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < plays.size(); ++i) {
    if (plays[i] < 0 || plays[i] >= modulus) {
      throw RangeError("agent " + std::to_string(i) + " played " + std::to_string(plays[i]) + ", outside [0," +
                       std::to_string(modulus) + ")");
    }
    acc = (acc + plays[i]) % modulus;
  }
  return static_cast<int>(acc);
}

BigInt outcome_sum(std::span<const BigInt> plays, const BigInt& modulus) {
  if (modulus < 1) throw RangeError("modulus must be at least 1, got " + modulus.str());
  BigInt acc = 0;
  for (std::size_t i = 0; i < plays.size(); ++i) {
    if (plays[i] < 0 || plays[i] >= modulus) {
      throw RangeError("agent " + std::to_string(i) + " played " + plays[i].str() + ", outside [0," +
                       modulus.str() + ")");
    }
    acc += plays[i];
    if (acc >= modulus) acc -= modulus;
  }
  return acc;
}

MixedStrategy outcome_distribution(const Profile& profile, int modulus) {
  check_modulus(modulus);
  if (profile.empty()) throw ValidationError("outcome distribution of an empty profile");
  for (std::size_t i = 0; i < profile.size(); ++i) check_support(profile[i], modulus, i);
  std::vector<Rational> acc = point_weights(modulus);
  acc[0] = 1;
  for (const auto& s : profile) acc = convolve(acc, s, modulus);
  return MixedStrategy(std::move(acc));
}

Rational expected_utility(const ModGame& game, const Profile& profile, std::size_t agent) {
  check_profile(game, profile);
  if (agent >= profile.size()) {
    throw RangeError("agent index " + std::to_string(agent) + " out of range for " +
                     std::to_string(profile.size()) + " agents");
  }
  const auto dist = outcome_distribution(profile, game.modulus());
  Rational eu = 0;
  for (int o = 0; o < game.modulus(); ++o) eu += dist.weights()[o] * game.utility(agent, o);
  return eu;
}

Verdict verify_nash(const ModGame& game, const Profile& profile) {
  check_profile(game, profile);
  const int m = game.modulus();
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const auto eu = pure_play_utilities(game, i, others_distribution(profile, i, m));
    Rational current = 0;
    for (int k = 0; k < m; ++k) current += profile[i][k] * eu[k];
    int best = 0;
    for (int k = 1; k < m; ++k) {
      if (eu[k] > eu[best]) best = k;
    }
    if (eu[best] > current) {
      const Rational delta = eu[best] - current;
      return Verdict::fail("nash", "agent " + std::to_string(i) + " gains " + format_rational(delta) +
                                       " by playing " + std::to_string(best),
                           {{"agent", i}, {"deviation", best}, {"delta", format_rational(delta)}});
    }
  }
  return Verdict::pass("nash");
}

}  // namespace derand::modgame
