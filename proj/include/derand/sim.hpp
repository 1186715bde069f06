#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "derand/modgame.hpp"
#include "derand/rational.hpp"

namespace derand::sim {

struct Uniform {
  bool operator==(const Uniform&) const = default;
};
struct Fixed {
  std::int64_t value = 0;
  bool operator==(const Fixed&) const = default;
};
using PlayPolicy = std::variant<Uniform, Fixed, modgame::MixedStrategy>;

/// How an agent plays the integer game, and an optional report that
/// replaces its sincere report (interpreted by the mechanism).
struct AgentPolicy {
  PlayPolicy play = Uniform{};
  std::optional<nlohmann::json> report;

  bool operator==(const AgentPolicy&) const = default;
};

/// plays[agent][round]
using PlayMatrix = std::vector<std::vector<std::int64_t>>;

/// A mechanism as seen by the simulator: every agent plays `rounds`
/// independent integers in [0, modulus), and `outcome` maps the plays (and
/// report overrides) to an outcome label. `outcome` must be thread-safe.
struct SimMechanism {
  int n_agents = 0;
  std::int64_t modulus = 2;
  int rounds = 1;
  std::function<std::string(const PlayMatrix&, std::span<const AgentPolicy>)> outcome;
};

/// The bare modular game: outcome label = decimal sum mod modulus.
SimMechanism modular_game(int n_agents, std::int64_t modulus);

using Distribution = std::map<std::string, Rational>;

struct TrialReport {
  std::uint64_t trials = 0;
  std::map<std::string, std::uint64_t> outcome_frequencies;
  std::optional<Rational> empirical_tv;
  std::uint64_t master_seed = 0;

  bool operator==(const TrialReport&) const = default;
};

/// Seed of trial t: splitmix64(master_seed ^ splitmix64(t)). Each trial
/// runs a fresh mt19937_64 from that seed and draws agents' plays in order
/// (agent-major, then round) with rejection sampling.
std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial);

/// Deterministic in master_seed and independent of `workers`. When a
/// reference distribution is given, the report carries the exact TV
/// distance of the empirical frequencies to it.
TrialReport run_trials(const SimMechanism& mechanism, std::span<const AgentPolicy> policies, std::uint64_t trials,
                       std::uint64_t master_seed, const std::optional<Distribution>& reference = std::nullopt,
                       unsigned workers = 1);

/// Half the L1 distance; outcomes missing from one side count as 0.
Rational tv_distance(const Distribution& a, const Distribution& b);

/// Play distribution of one policy over [0, modulus).
modgame::MixedStrategy play_distribution(const AgentPolicy& policy, std::int64_t modulus);

/// Exact outcome distribution by enumerating every play combination with
/// positive probability. Refuses more than `max_cases` combinations.
Distribution exact_distribution(const SimMechanism& mechanism, std::span<const AgentPolicy> policies,
                                std::uint64_t max_cases = 2'000'000);

Distribution to_distribution(const modgame::MixedStrategy& s);

}  // namespace derand::sim
