#include "derand/school.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "derand/error.hpp"
#include "derand/modgame.hpp"

namespace derand::school {

namespace {

void check_priorities(const SchoolInstance& instance, const Priorities& priorities) {
  if (priorities.size() != static_cast<std::size_t>(instance.n_schools())) {
    throw ValidationError("expected priorities for " + std::to_string(instance.n_schools()) + " schools, got " +
                          std::to_string(priorities.size()));
  }
  for (std::size_t c = 0; c < priorities.size(); ++c) {
    try {
      if (static_cast<int>(priorities[c].size()) != instance.n_students()) throw ValidationError("wrong length");
      permute::Permutation check(priorities[c]);
    } catch (const ValidationError& e) {
      throw ValidationError("priority order of school " + std::to_string(c) + " is not strict over all students: " +
                            e.what());
    }
  }
}

// rank[c][s] = position of student s in school c's order.
std::vector<std::vector<int>> priority_ranks(const Priorities& priorities) {
  std::vector<std::vector<int>> rank;
  for (const auto& order : priorities) rank.push_back(permute::Permutation(order).positions());
  return rank;
}

}  // namespace

void validate(const SchoolInstance& instance) {
  const int n = instance.n_students();
  const int k = instance.n_schools();
  for (int s = 0; s < n; ++s) {
    std::vector<bool> seen(k, false);
    for (int c : instance.student_prefs[s]) {
      if (c < 0 || c >= k) throw RangeError("student " + std::to_string(s) + " lists unknown school " + std::to_string(c));
      if (seen[c]) throw ValidationError("student " + std::to_string(s) + " lists school " + std::to_string(c) + " twice");
      seen[c] = true;
    }
  }
  for (int c = 0; c < k; ++c) {
    const auto& school = instance.schools[c];
    if (school.capacity < 1) throw ValidationError("school " + std::to_string(c) + " has capacity below 1");
    std::vector<bool> seen(n, false);
    int covered = 0;
    for (const auto& group : school.groups) {
      for (int s : group) {
        if (s < 0 || s >= n || seen[s]) {
          throw ValidationError("groups of school " + std::to_string(c) + " do not partition the students (entry " +
                                std::to_string(s) + ")");
        }
        seen[s] = true;
        ++covered;
      }
    }
    if (covered != n) throw ValidationError("groups of school " + std::to_string(c) + " miss some students");
  }
}

std::vector<std::vector<int>> Matching::students_at(int n_schools) const {
  std::vector<std::vector<int>> at(n_schools);
  for (std::size_t s = 0; s < school_of.size(); ++s) {
    if (school_of[s]) at.at(*school_of[s]).push_back(static_cast<int>(s));
  }
  return at;
}

std::vector<int> tie_break(const std::vector<std::vector<int>>& groups, const permute::Permutation& perm) {
  const auto position = perm.positions();
  std::vector<int> order;
  for (const auto& group : groups) {
    std::vector<int> g = group;
    for (int s : g) {
      if (s < 0 || s >= perm.size()) {
        throw ValidationError("lottery permutation of size " + std::to_string(perm.size()) +
                              " does not cover student " + std::to_string(s));
      }
    }
    std::sort(g.begin(), g.end(), [&](int x, int y) { return position[x] < position[y]; });
    order.insert(order.end(), g.begin(), g.end());
  }
  return order;
}

Matching deferred_acceptance(const SchoolInstance& instance, const Priorities& priorities) {
  validate(instance);
  check_priorities(instance, priorities);
  const int n = instance.n_students();
  const auto rank = priority_ranks(priorities);

  std::vector<std::size_t> next(n, 0);  // index of next school to propose to
  std::vector<std::vector<int>> held(instance.n_schools());
  std::deque<int> free;
  for (int s = 0; s < n; ++s) free.push_back(s);

  while (!free.empty()) {
    const int s = free.front();
    free.pop_front();
    const auto& prefs = instance.student_prefs[s];
    if (next[s] >= prefs.size()) continue;  // list exhausted, stays unmatched
    const int c = prefs[next[s]++];
    auto& h = held[c];
    h.push_back(s);
    if (static_cast<int>(h.size()) > instance.schools[c].capacity) {
      const auto worst = std::max_element(h.begin(), h.end(), [&](int x, int y) { return rank[c][x] < rank[c][y]; });
      free.push_back(*worst);
      h.erase(worst);
    }
  }

  Matching m;
  m.school_of.assign(n, std::nullopt);
  for (int c = 0; c < instance.n_schools(); ++c) {
    for (int s : held[c]) m.school_of[s] = c;
  }
  return m;
}

BidMode mode_of(const SchoolBids& bids) {
  return std::holds_alternative<permute::CompactBids>(bids) ? BidMode::Compact : BidMode::Lehmer;
}

DaTranscript derand_da(const SchoolInstance& instance, const SchoolBids& bids) {
  validate(instance);
  const int n = instance.n_students();
  DaTranscript t{bids, std::nullopt, {}, {}, {}};
  if (const auto* full = std::get_if<std::vector<BigInt>>(&bids)) {
    if (full->size() != static_cast<std::size_t>(n)) {
      throw ValidationError("expected " + std::to_string(n) + " Lehmer bids, got " + std::to_string(full->size()));
    }
    t.seed = modgame::outcome_sum(*full, factorial(n));
    t.permutation = permute::lehmer_decode(*t.seed, n);
  } else {
    t.permutation = permute::compact_priority_order(std::get<permute::CompactBids>(bids), n);
  }
  for (const auto& school : instance.schools) t.priorities.push_back(tie_break(school.groups, t.permutation));
  t.matching = deferred_acceptance(instance, t.priorities);
  return t;
}

Verdict is_stable(const SchoolInstance& instance, const Priorities& priorities, const Matching& matching) {
  validate(instance);
  check_priorities(instance, priorities);
  const int n = instance.n_students();
  if (matching.school_of.size() != static_cast<std::size_t>(n)) {
    throw ValidationError("matching covers " + std::to_string(matching.school_of.size()) + " students, instance has " +
                          std::to_string(n));
  }
  const auto at = matching.students_at(instance.n_schools());
  for (int c = 0; c < instance.n_schools(); ++c) {
    if (static_cast<int>(at[c].size()) > instance.schools[c].capacity) {
      throw ValidationError("school " + std::to_string(c) + " is over capacity");
    }
  }
  const auto rank = priority_ranks(priorities);
  for (int s = 0; s < n; ++s) {
    const auto& prefs = instance.student_prefs[s];
    for (int c : prefs) {
      if (matching.school_of[s] == c) break;  // the rest are worse than the match
      const bool free_seat = static_cast<int>(at[c].size()) < instance.schools[c].capacity;
      const auto displaced =
          std::find_if(at[c].begin(), at[c].end(), [&](int other) { return rank[c][other] > rank[c][s]; });
      if (free_seat || displaced != at[c].end()) {
        nlohmann::json w{{"student", s}, {"school", c}};
        if (!free_seat) w["displaced"] = *displaced;
        return Verdict::fail("stable",
                             "student " + std::to_string(s) + " and school " + std::to_string(c) + " block the matching",
                             std::move(w));
      }
    }
  }
  return Verdict::pass("stable");
}

}  // namespace derand::school
