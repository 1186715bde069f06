#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "derand/permute.hpp"
#include "derand/rational.hpp"
#include "derand/verdict.hpp"

namespace derand::school {

/// Coarse priorities: groups is an ordered partition of all students, the
/// first group having the highest priority.
struct School {
  int capacity = 1;
  std::vector<std::vector<int>> groups;

  bool operator==(const School&) const = default;
};

/// student_prefs[s] lists acceptable schools, best first. Schools missing
/// from the list are unacceptable.
struct SchoolInstance {
  std::vector<std::vector<int>> student_prefs;
  std::vector<School> schools;

  int n_students() const { return static_cast<int>(student_prefs.size()); }
  int n_schools() const { return static_cast<int>(schools.size()); }

  bool operator==(const SchoolInstance&) const = default;
};

void validate(const SchoolInstance& instance);

/// Per-school strict priority order over all students, highest first.
using Priorities = std::vector<std::vector<int>>;

struct Matching {
  std::vector<std::optional<int>> school_of;

  std::vector<std::vector<int>> students_at(int n_schools) const;
  bool operator==(const Matching&) const = default;
};

/// Groups in order; inside a group, students ordered by position in perm.
std::vector<int> tie_break(const std::vector<std::vector<int>>& groups, const permute::Permutation& perm);

/// Student-proposing deferred acceptance.
Matching deferred_acceptance(const SchoolInstance& instance, const Priorities& priorities);

/// Full-Lehmer integers in [0, n!) or compact per-student bids.
using SchoolBids = std::variant<std::vector<BigInt>, permute::CompactBids>;

enum class BidMode { Lehmer, Compact };
BidMode mode_of(const SchoolBids& bids);

/// Everything needed to audit and replay one run.
struct DaTranscript {
  SchoolBids bids;
  std::optional<BigInt> seed;  // Lehmer mode only
  permute::Permutation permutation;
  Priorities priorities;
  Matching matching;
};

/// One lottery permutation over all students, shared by every school.
DaTranscript derand_da(const SchoolInstance& instance, const SchoolBids& bids);

/// Passes iff there is no blocking pair (student s, school c): s prefers c
/// to its match and c has a free seat or holds someone of lower priority.
Verdict is_stable(const SchoolInstance& instance, const Priorities& priorities, const Matching& matching);

}  // namespace derand::school
