#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "derand/rational.hpp"

namespace derand::tasks {

/// times[agent-1][task-1] for the two agents, in hours.
using TimeMatrix = std::array<std::vector<Rational>, 2>;

inline constexpr int kMaxExhaustiveTasks = 20;

/// Two agents, m tasks. The mechanism runs on declared times; makespan and
/// utilities are measured in true times (declared when absent).
struct TaskInstance {
  TimeMatrix declared;
  std::optional<TimeMatrix> true_times;

  int m() const { return static_cast<int>(declared[0].size()); }
  const TimeMatrix& truth() const { return true_times ? *true_times : declared; }

  bool operator==(const TaskInstance&) const = default;
};

/// Tasks are numbered 1..m and agents 1 and 2.
struct TaskOutcome {
  std::vector<int> a1;
  std::vector<int> a2;
  Rational p1 = 0;
  Rational p2 = 0;

  const std::vector<int>& tasks_of(int agent) const { return agent == 1 ? a1 : a2; }
  const Rational& payment_of(int agent) const { return agent == 1 ? p1 : p2; }

  bool operator==(const TaskOutcome&) const = default;
};

void validate(const TaskInstance& instance);

/// Round j gives priority to agent 1 + b_j. The priority agent i takes the
/// task if t^i_j <= 4/3 t^{i'}_j and is paid 4/3 t^{i'}_j; otherwise the
/// other agent takes it for 3/4 t^i_j.
TaskOutcome biased_min_work(const TaskInstance& instance, std::span<const int> bits);

/// Each round's bit is the xor of the two agents' parity-game bits.
TaskOutcome derand_biased_min_work(const TaskInstance& instance, std::span<const std::array<int, 2>> bit_pairs);

/// Payment minus the true work of the agent's tasks.
Rational agent_utility(const TaskOutcome& outcome, int agent, const TimeMatrix& true_times);

Rational makespan(const TaskOutcome& outcome, const TimeMatrix& true_times);

/// Mean makespan (true times) over all 2^m bit vectors; m <= 20.
Rational expected_makespan_uniform(const TaskInstance& instance);

/// Minimum over all 2^m partitions of the larger load; m <= 20.
Rational optimal_makespan(const TimeMatrix& true_times);

}  // namespace derand::tasks
