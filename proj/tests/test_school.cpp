#include <algorithm>

#include <gtest/gtest.h>

#include "derand/error.hpp"
#include "derand/generators.hpp"
#include "derand/school.hpp"

using namespace derand;
using namespace derand::school;
using derand::permute::Permutation;

namespace {

// 0 = best listed school; unlisted schools and being unmatched come after.
int pref_rank(const SchoolInstance& inst, int s, std::optional<int> c) {
  const auto& p = inst.student_prefs[s];
  if (!c) return static_cast<int>(p.size());
  const auto it = std::find(p.begin(), p.end(), *c);
  return it == p.end() ? static_cast<int>(p.size()) + 1 : static_cast<int>(it - p.begin());
}

// Oracle stability test: individually rational, within capacity, and no
// blocking pair.
bool stable_oracle(const SchoolInstance& inst, const Priorities& pri, const std::vector<std::optional<int>>& m) {
  const int n = inst.n_students();
  std::vector<int> load(inst.n_schools(), 0);
  for (int s = 0; s < n; ++s) {
    if (!m[s]) continue;
    if (pref_rank(inst, s, m[s]) > static_cast<int>(inst.student_prefs[s].size())) return false;
    if (++load[*m[s]] > inst.schools[*m[s]].capacity) return false;
  }
  for (int s = 0; s < n; ++s) {
    for (int c : inst.student_prefs[s]) {
      if (pref_rank(inst, s, c) >= pref_rank(inst, s, m[s])) break;
      if (load[c] < inst.schools[c].capacity) return false;
      const auto pos = [&](int x) { return std::find(pri[c].begin(), pri[c].end(), x) - pri[c].begin(); };
      for (int o = 0; o < n; ++o) {
        if (m[o] == c && pos(o) > pos(s)) return false;
      }
    }
  }
  return true;
}

SchoolInstance two_students(std::vector<std::vector<int>> groups_a) {
  // Schools 0 (A) and 1 (B), both students list A then B.
  return SchoolInstance{{{0, 1}, {0, 1}}, {School{1, groups_a}, School{1, {{0}, {1}}}}};
}

}  // namespace

TEST(TieBreak, Examples) {
  EXPECT_EQ(tie_break({{0, 1, 2}}, Permutation({2, 0, 1})), (std::vector<int>{2, 0, 1}));
  EXPECT_EQ(tie_break({{0, 2}, {1}}, Permutation({2, 0, 1})), (std::vector<int>{2, 0, 1}));
  EXPECT_EQ(tie_break({{1}, {0}}, Permutation({0, 1})), (std::vector<int>{1, 0}));
  EXPECT_EQ(tie_break({{1}, {0}}, Permutation({1, 0})), (std::vector<int>{1, 0}));
}

TEST(DeferredAcceptance, Examples) {
  const auto first = two_students({{0}, {1}});
  const auto m1 = deferred_acceptance(first, {{0, 1}, {0, 1}});
  EXPECT_EQ(m1.school_of, (std::vector<std::optional<int>>{0, 1}));

  const auto second = two_students({{1}, {0}});
  const auto m2 = deferred_acceptance(second, {{1, 0}, {0, 1}});
  EXPECT_EQ(m2.school_of, (std::vector<std::optional<int>>{1, 0}));

  const SchoolInstance single{{{0}}, {School{1, {{0}}}}};
  EXPECT_EQ(deferred_acceptance(single, {{0}}).school_of, (std::vector<std::optional<int>>{0}));
}

TEST(DeferredAcceptance, UnlistedSchoolsStayEmpty) {
  const SchoolInstance inst{{{}, {0}}, {School{2, {{0, 1}}}}};
  EXPECT_EQ(deferred_acceptance(inst, {{0, 1}}).school_of, (std::vector<std::optional<int>>{std::nullopt, 0}));
}

// Oracle: enumerate every assignment, keep the stable ones, and check DA
// gives every student its best stable school.
TEST(DeferredAcceptance, StudentOptimalAmongAllStableMatchings) {
  Rng rng(51);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = uniform_int(rng, 1, 4);
    const int k = uniform_int(rng, 1, 3);
    const auto inst = gen::random_school(n, k, rng);
    Priorities pri;
    const permute::Permutation perm(random_ranking(n, rng));
    for (const auto& s : inst.schools) pri.push_back(tie_break(s.groups, perm));
    const auto da = deferred_acceptance(inst, pri).school_of;
    ASSERT_TRUE(stable_oracle(inst, pri, da));
    std::vector<int> code(n, 0);
    for (;;) {
      std::vector<std::optional<int>> m(n);
      for (int s = 0; s < n; ++s) {
        if (code[s] < k) m[s] = code[s];
      }
      if (stable_oracle(inst, pri, m)) {
        for (int s = 0; s < n; ++s) EXPECT_LE(pref_rank(inst, s, da[s]), pref_rank(inst, s, m[s]));
      }
      int d = 0;
      while (d < n && ++code[d] == k + 1) code[d++] = 0;
      if (d == n) break;
    }
  }
}

TEST(DerandDa, Examples) {
  const auto inst = two_students({{0, 1}});
  const auto zero = derand_da(inst, std::vector<BigInt>{0, 0});
  EXPECT_EQ(zero.permutation, Permutation::identity(2));
  EXPECT_EQ(zero.seed, BigInt(0));
  EXPECT_EQ(zero.priorities[0], (std::vector<int>{0, 1}));

  const auto flipped = derand_da(inst, std::vector<BigInt>{1, 0});
  EXPECT_EQ(flipped.permutation.values(), (std::vector<int>{1, 0}));
  EXPECT_EQ(flipped.priorities[0], (std::vector<int>{1, 0}));
  EXPECT_EQ(flipped.matching.school_of, (std::vector<std::optional<int>>{1, 0}));

  const SchoolInstance three{{{0}, {0}, {0}}, {School{1, {{0, 1, 2}}}}};
  const auto compact = derand_da(three, permute::CompactBids::zeros(3));
  EXPECT_EQ(compact.permutation.values(), (std::vector<int>{0, 2, 1}));
  EXPECT_EQ(compact.priorities[0], (std::vector<int>{0, 2, 1}));
  EXPECT_FALSE(compact.seed.has_value());
  EXPECT_EQ(mode_of(compact.bids), BidMode::Compact);
}

TEST(DerandDa, Validates) {
  const auto inst = two_students({{0, 1}});
  EXPECT_THROW(derand_da(inst, std::vector<BigInt>{0}), ValidationError);
  EXPECT_THROW(derand_da(inst, std::vector<BigInt>{2, 0}), RangeError);
  SchoolInstance bad = inst;
  bad.schools[0].groups = {{0}};
  EXPECT_THROW(derand_da(bad, std::vector<BigInt>{0, 0}), ValidationError);
}

TEST(IsStable, Examples) {
  const auto inst = two_students({{1}, {0}});
  const Priorities pri{{1, 0}, {0, 1}};
  EXPECT_TRUE(is_stable(inst, pri, deferred_acceptance(inst, pri)));
  const auto bad = is_stable(inst, pri, Matching{{0, 1}});
  ASSERT_FALSE(bad);
  EXPECT_EQ(bad.witness["student"], 1);
  EXPECT_EQ(bad.witness["school"], 0);
  EXPECT_EQ(bad.witness["displaced"], 0);
  EXPECT_TRUE(is_stable(SchoolInstance{}, {}, Matching{}));
}

TEST(IsStable, AgreesWithOracle) {
  Rng rng(52);
  for (int trial = 0; trial < 400; ++trial) {
    const int n = uniform_int(rng, 1, 4);
    const int k = uniform_int(rng, 1, 3);
    const auto inst = gen::random_school(n, k, rng);
    Priorities pri;
    const permute::Permutation perm(random_ranking(n, rng));
    for (const auto& s : inst.schools) pri.push_back(tie_break(s.groups, perm));
    Matching m;
    std::vector<int> load(k, 0);
    for (int s = 0; s < n; ++s) {
      // Random matching that respects capacities and acceptability.
      std::optional<int> pick;
      const auto& p = inst.student_prefs[s];
      if (!p.empty() && uniform_int(rng, 0, 2) > 0) {
        const int c = p[uniform_int(rng, 0, static_cast<int>(p.size()) - 1)];
        if (load[c] < inst.schools[c].capacity) {
          pick = c;
          ++load[c];
        }
      }
      m.school_of.push_back(pick);
    }
    EXPECT_EQ(static_cast<bool>(is_stable(inst, pri, m)), stable_oracle(inst, pri, m.school_of));
  }
}

TEST(DerandDa, StableForEverySeed) {
  Rng rng(53);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = uniform_int(rng, 1, 4);
    const auto inst = gen::random_school(n, uniform_int(rng, 1, 3), rng);
    for (int c = 0; c < factorial(n).convert_to<int>(); ++c) {
      std::vector<BigInt> bids(n, BigInt(0));
      bids[n - 1] = c;
      const auto t = derand_da(inst, bids);
      EXPECT_TRUE(stable_oracle(inst, t.priorities, t.matching.school_of));
      EXPECT_TRUE(is_stable(inst, t.priorities, t.matching));
    }
  }
}
