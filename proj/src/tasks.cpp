#include "derand/tasks.hpp"

#include <algorithm>
#include <cstdint>
#include <string>

#include "derand/error.hpp"

namespace derand::tasks {

namespace {

const Rational kBias(4, 3);
const Rational kInverseBias(3, 4);

void validate_matrix(const TimeMatrix& t, const char* what) {
  if (t[0].size() != t[1].size()) {
    throw ValidationError(std::string(what) + " rows have " + std::to_string(t[0].size()) + " and " +
                          std::to_string(t[1].size()) + " tasks");
  }
  for (int i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < t[i].size(); ++j) {
      if (t[i][j] <= 0) {
        throw ValidationError(std::string(what) + " time of agent " + std::to_string(i + 1) + " for task " +
                              std::to_string(j + 1) + " must be positive, got " + format_rational(t[i][j]));
      }
    }
  }
}

void check_capacity(std::size_t m) {
  if (m > static_cast<std::size_t>(kMaxExhaustiveTasks)) {
    throw CapacityError("exhaustive enumeration over 2^" + std::to_string(m) + " cases exceeds the limit of 2^" +
                        std::to_string(kMaxExhaustiveTasks) + "; estimate by Monte Carlo with the sim module");
  }
}

}  // namespace

void validate(const TaskInstance& instance) {
  validate_matrix(instance.declared, "declared");
  if (instance.true_times) {
    validate_matrix(*instance.true_times, "true");
    if (instance.true_times->at(0).size() != instance.declared[0].size()) {
      throw ValidationError("true and declared times cover different task counts");
    }
  }
}

TaskOutcome biased_min_work(const TaskInstance& instance, std::span<const int> bits) {
  validate(instance);
  const int m = instance.m();
  if (bits.size() != static_cast<std::size_t>(m)) {
    throw ValidationError("expected " + std::to_string(m) + " bits, got " + std::to_string(bits.size()));
  }
  const auto& t = instance.declared;
  TaskOutcome out;
  for (int j = 0; j < m; ++j) {
    if (bits[j] != 0 && bits[j] != 1) {
      throw RangeError("bit " + std::to_string(j + 1) + " is " + std::to_string(bits[j]) + ", not 0 or 1");
    }
    const int i = bits[j];  // 0-based priority agent
    const int other = 1 - i;
    const int task = j + 1;
    if (t[i][j] <= kBias * t[other][j]) {
      (i == 0 ? out.a1 : out.a2).push_back(task);
      (i == 0 ? out.p1 : out.p2) += kBias * t[other][j];
    } else {
      (other == 0 ? out.a1 : out.a2).push_back(task);
      (other == 0 ? out.p1 : out.p2) += kInverseBias * t[i][j];
    }
  }
  return out;
}

TaskOutcome derand_biased_min_work(const TaskInstance& instance, std::span<const std::array<int, 2>> bit_pairs) {
  std::vector<int> bits;
  bits.reserve(bit_pairs.size());
  for (std::size_t j = 0; j < bit_pairs.size(); ++j) {
    for (int bit : bit_pairs[j]) {
      if (bit != 0 && bit != 1) {
        throw RangeError("round " + std::to_string(j + 1) + " bit is " + std::to_string(bit) + ", not 0 or 1");
      }
    }
    bits.push_back(bit_pairs[j][0] ^ bit_pairs[j][1]);
  }
  return biased_min_work(instance, bits);
}

Rational agent_utility(const TaskOutcome& outcome, int agent, const TimeMatrix& true_times) {
  if (agent != 1 && agent != 2) throw RangeError("agent must be 1 or 2, got " + std::to_string(agent));
  Rational u = outcome.payment_of(agent);
  for (int task : outcome.tasks_of(agent)) u -= true_times[agent - 1].at(task - 1);
  return u;
}

Rational makespan(const TaskOutcome& outcome, const TimeMatrix& true_times) {
  Rational load[2] = {0, 0};
  for (int agent = 1; agent <= 2; ++agent) {
    for (int task : outcome.tasks_of(agent)) load[agent - 1] += true_times[agent - 1].at(task - 1);
  }
  return std::max(load[0], load[1]);
}

Rational expected_makespan_uniform(const TaskInstance& instance) {
  validate(instance);
  const auto m = static_cast<std::size_t>(instance.m());
  check_capacity(m);
  const std::uint64_t cases = std::uint64_t{1} << m;
  std::vector<int> bits(m);
  Rational total = 0;
  for (std::uint64_t mask = 0; mask < cases; ++mask) {
    for (std::size_t j = 0; j < m; ++j) bits[j] = static_cast<int>((mask >> j) & 1U);
    total += makespan(biased_min_work(instance, bits), instance.truth());
  }
  return total / Rational(BigInt(cases));
}

Rational optimal_makespan(const TimeMatrix& true_times) {
  validate_matrix(true_times, "true");
  const std::size_t m = true_times[0].size();
  check_capacity(m);
  const std::uint64_t cases = std::uint64_t{1} << m;
  Rational best = -1;
  for (std::uint64_t mask = 0; mask < cases; ++mask) {
    Rational load[2] = {0, 0};
    for (std::size_t j = 0; j < m; ++j) {
      const int agent = static_cast<int>((mask >> j) & 1U);
      load[agent] += true_times[agent][j];
    }
    const Rational span = std::max(load[0], load[1]);
    if (best < 0 || span < best) best = span;
  }
  return best;
}

}  // namespace derand::tasks
