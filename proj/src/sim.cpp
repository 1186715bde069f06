#include "derand/sim.hpp"

#include <algorithm>
#include <exception>
#include <limits>
#include <string>
#include <thread>

#include <boost/integer/common_factor_rt.hpp>

#include "derand/error.hpp"
#include "derand/random.hpp"

namespace derand::sim {

namespace {

constexpr std::int64_t kMaxDenseModulus = 1'000'000;

// Integer cumulative table for exact sampling of a mixed strategy:
// draw u in [0, total) and take the first value whose cumulative exceeds u.
struct Sampler {
  std::uint64_t total = 0;
  std::vector<std::uint64_t> cumulative;
  std::int64_t fixed = -1;
  bool uniform = false;
  std::int64_t modulus = 0;

  std::int64_t draw(Rng& rng) const {
    if (fixed >= 0) return fixed;
    if (uniform) return static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(modulus)));
    const std::uint64_t u = uniform_below(rng, total);
    return std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin();
  }
};

Sampler make_sampler(const AgentPolicy& policy, std::int64_t modulus, std::size_t agent) {
  Sampler s;
  s.modulus = modulus;
  if (std::holds_alternative<Uniform>(policy.play)) {
    s.uniform = true;
  } else if (const auto* f = std::get_if<Fixed>(&policy.play)) {
    if (f->value < 0 || f->value >= modulus) {
      throw RangeError("agent " + std::to_string(agent) + " fixed play " + std::to_string(f->value) + " outside [0," +
                       std::to_string(modulus) + ")");
    }
    s.fixed = f->value;
  } else {
    const auto& mixed = std::get<modgame::MixedStrategy>(policy.play);
    if (mixed.max_support() >= modulus) {
      throw RangeError("agent " + std::to_string(agent) + " strategy exceeds [0," + std::to_string(modulus) + ")");
    }
    BigInt den = 1;
    for (const auto& w : mixed.weights()) den = boost::integer::lcm(den, denominator(w));
    if (den > std::numeric_limits<std::uint64_t>::max()) {
      throw CapacityError("strategy of agent " + std::to_string(agent) + " needs a denominator beyond 64 bits");
    }
    s.total = den.convert_to<std::uint64_t>();
    BigInt acc = 0;
    for (const auto& w : mixed.weights()) {
      acc += numerator(w) * (den / denominator(w));
      s.cumulative.push_back(acc.convert_to<std::uint64_t>());
    }
  }
  return s;
}

void check_policies(const SimMechanism& mechanism, std::span<const AgentPolicy> policies) {
  if (policies.size() != static_cast<std::size_t>(mechanism.n_agents)) {
    throw ValidationError("got " + std::to_string(policies.size()) + " policies for " +
                          std::to_string(mechanism.n_agents) + " agents");
  }
  if (mechanism.modulus < 1 || mechanism.rounds < 0) throw ValidationError("mechanism needs a positive modulus");
}

}  // namespace

SimMechanism modular_game(int n_agents, std::int64_t modulus) {
  SimMechanism m;
  m.n_agents = n_agents;
  m.modulus = modulus;
  m.outcome = [modulus](const PlayMatrix& plays, std::span<const AgentPolicy>) {
    std::int64_t s = 0;
    for (const auto& row : plays) s = (s + row[0]) % modulus;
    return std::to_string(s);
  };
  return m;
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial) {
  return splitmix64(master_seed ^ splitmix64(trial));
}

TrialReport run_trials(const SimMechanism& mechanism, std::span<const AgentPolicy> policies, std::uint64_t trials,
                       std::uint64_t master_seed, const std::optional<Distribution>& reference, unsigned workers) {
  check_policies(mechanism, policies);
  std::vector<Sampler> samplers;
  for (std::size_t a = 0; a < policies.size(); ++a) samplers.push_back(make_sampler(policies[a], mechanism.modulus, a));

  workers = std::max(1U, workers);
  std::vector<std::map<std::string, std::uint64_t>> tallies(workers);
  std::vector<std::exception_ptr> errors(workers);
  auto run_range = [&](unsigned w, std::uint64_t begin, std::uint64_t end) noexcept {
    try {
      PlayMatrix plays(mechanism.n_agents, std::vector<std::int64_t>(mechanism.rounds));
      for (std::uint64_t t = begin; t < end; ++t) {
        Rng rng(trial_seed(master_seed, t));
        for (int a = 0; a < mechanism.n_agents; ++a) {
          for (int r = 0; r < mechanism.rounds; ++r) plays[a][r] = samplers[a].draw(rng);
        }
        ++tallies[w][mechanism.outcome(plays, policies)];
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    run_range(0, 0, trials);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (trials + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t begin = std::min<std::uint64_t>(trials, w * chunk);
      const std::uint64_t end = std::min<std::uint64_t>(trials, begin + chunk);
      pool.emplace_back(run_range, w, begin, end);
    }
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  TrialReport report;
  report.trials = trials;
  report.master_seed = master_seed;
  for (const auto& tally : tallies) {
    for (const auto& [outcome, count] : tally) report.outcome_frequencies[outcome] += count;
  }
  if (reference && trials > 0) {
    Distribution empirical;
    for (const auto& [outcome, count] : report.outcome_frequencies) {
      empirical[outcome] = Rational(count) / Rational(trials);
    }
    report.empirical_tv = tv_distance(empirical, *reference);
  }
  return report;
}

Rational tv_distance(const Distribution& a, const Distribution& b) {
  Rational sum = 0;
  for (const auto& [k, p] : a) {
    const auto it = b.find(k);
    sum += abs(p - (it == b.end() ? Rational(0) : it->second));
  }
  for (const auto& [k, q] : b) {
    if (!a.contains(k)) sum += q;
  }
  return sum / 2;
}

modgame::MixedStrategy play_distribution(const AgentPolicy& policy, std::int64_t modulus) {
  if (modulus > kMaxDenseModulus) {
    throw CapacityError("exact play distribution over " + std::to_string(modulus) + " values is too large");
  }
  const int m = static_cast<int>(modulus);
  if (std::holds_alternative<Uniform>(policy.play)) return modgame::MixedStrategy::uniform(m);
  if (const auto* f = std::get_if<Fixed>(&policy.play)) return modgame::MixedStrategy::point(m, static_cast<int>(f->value));
  const auto& mixed = std::get<modgame::MixedStrategy>(policy.play);
  if (mixed.max_support() >= m) throw RangeError("strategy exceeds the game's range");
  std::vector<Rational> w(m, Rational(0));
  for (int v = 0; v < std::min(m, mixed.size()); ++v) w[v] = mixed[v];
  return modgame::MixedStrategy(std::move(w));
}

Distribution exact_distribution(const SimMechanism& mechanism, std::span<const AgentPolicy> policies,
                                std::uint64_t max_cases) {
  check_policies(mechanism, policies);
  struct Slot {
    std::vector<std::int64_t> values;
    std::vector<Rational> weights;
  };
  std::vector<Slot> slots;  // agent-major, then round
  double cases = 1;
  for (int a = 0; a < mechanism.n_agents; ++a) {
    const auto d = play_distribution(policies[a], mechanism.modulus);
    Slot s;
    for (int v = 0; v < d.size(); ++v) {
      if (d.weights()[v] != 0) {
        s.values.push_back(v);
        s.weights.push_back(d.weights()[v]);
      }
    }
    for (int r = 0; r < mechanism.rounds; ++r) {
      cases *= static_cast<double>(s.values.size());
      slots.push_back(s);
    }
  }
  if (cases > static_cast<double>(max_cases)) {
    throw CapacityError("exact enumeration over " + std::to_string(static_cast<unsigned long long>(cases)) +
                        " play combinations exceeds the limit");
  }
  Distribution out;
  PlayMatrix plays(mechanism.n_agents, std::vector<std::int64_t>(mechanism.rounds));
  std::vector<std::size_t> idx(slots.size(), 0);
  for (;;) {
    Rational p = 1;
    for (std::size_t k = 0; k < slots.size(); ++k) {
      plays[k / mechanism.rounds][k % mechanism.rounds] = slots[k].values[idx[k]];
      p *= slots[k].weights[idx[k]];
    }
    out[mechanism.outcome(plays, policies)] += p;
    std::size_t k = 0;
    while (k < slots.size() && ++idx[k] == slots[k].values.size()) idx[k++] = 0;
    if (k == slots.size()) break;
  }
  return out;
}

Distribution to_distribution(const modgame::MixedStrategy& s) {
  Distribution d;
  for (int v = 0; v < s.size(); ++v) {
    if (s.weights()[v] != 0) d[std::to_string(v)] = s.weights()[v];
  }
  return d;
}

}  // namespace derand::sim
