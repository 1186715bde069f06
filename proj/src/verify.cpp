#include "derand/verify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "derand/alloc.hpp"
#include "derand/error.hpp"
#include "derand/generators.hpp"
#include "derand/instance.hpp"
#include "derand/modgame.hpp"
#include "derand/peer.hpp"
#include "derand/permute.hpp"
#include "derand/random.hpp"
#include "derand/school.hpp"
#include "derand/sim.hpp"
#include "derand/simple_mechs.hpp"
#include "derand/tasks.hpp"

namespace derand::verify {

using nlohmann::json;

namespace {

// Keeps the first failure of a check.
class Check {
 public:
  explicit Check(std::string name) : name_(std::move(name)) {}

  bool ok() const { return !failure_; }

  void fail(const std::string& message, json witness) {
    if (!failure_) failure_ = Verdict::fail(name_, message, std::move(witness));
  }

  Verdict verdict() const { return failure_ ? *failure_ : Verdict::pass(name_); }

 private:
  std::string name_;
  std::optional<Verdict> failure_;
};

json rationals(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(format_rational(x));
  return out;
}

json strategy_json(const modgame::MixedStrategy& s) { return rationals(s.weights()); }

json profile_json(const modgame::Profile& p) {
  json out = json::array();
  for (const auto& s : p) out.push_back(strategy_json(s));
  return out;
}

json tasks_json(const tasks::TaskInstance& t) {
  return {{"t1", rationals(t.declared[0])}, {"t2", rationals(t.declared[1])}};
}

json school_json(const school::SchoolInstance& inst) {
  json schools = json::array();
  for (const auto& s : inst.schools) schools.push_back({{"capacity", s.capacity}, {"groups", s.groups}});
  return {{"student_prefs", inst.student_prefs}, {"schools", schools}};
}

void require_range(const std::string& suite, int n, int lo, int hi) {
  if (n < lo || n > hi) {
    throw ValidationError("suite " + suite + " supports --n in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

// ---- modgame ----

std::vector<Verdict> modgame_suite(int n, std::uint64_t samples, Rng& rng) {
  require_range("modgame", n, 2, 8);
  std::vector<Verdict> out;

  Check conv("modgame.uniform_convolution");
  for (int m = 2; m <= 12 && conv.ok(); ++m) {
    for (std::uint64_t s = 0; s < samples && conv.ok(); ++s) {
      modgame::Profile p;
      const int k = uniform_int(rng, 1, n);
      for (int a = 0; a < k; ++a) p.push_back(gen::random_strategy(m, rng));
      p[uniform_int(rng, 0, k - 1)] = modgame::MixedStrategy::uniform(m);
      const auto d = modgame::outcome_distribution(p, m);
      if (!d.is_uniform()) conv.fail("outcome not uniform", {{"m", m}, {"profile", profile_json(p)}, {"outcome", strategy_json(d)}});
    }
  }
  out.push_back(conv.verdict());

  Check quasi("modgame.quasi_uniform_nash");
  for (std::uint64_t s = 0; s < samples && quasi.ok(); ++s) {
    const int agents = uniform_int(rng, 2, std::min(n, 4));
    const int m = uniform_int(rng, 2, 8);
    const auto game = gen::random_game(agents, m, rng);
    modgame::Profile p;
    for (int a = 0; a < agents; ++a) p.push_back(gen::random_strategy(m, rng));
    const auto pick = random_ranking(agents, rng);
    p[pick[0]] = modgame::MixedStrategy::uniform(m);
    p[pick[1]] = modgame::MixedStrategy::uniform(m);
    const auto v = modgame::verify_nash(game, p);
    if (!v) quasi.fail("quasi-uniform profile is not an equilibrium", {{"m", m}, {"profile", profile_json(p)}, {"verdict", v.to_json()}});
  }
  out.push_back(quasi.verdict());

  Check example("modgame.distinct_preference_example");
  {
    const auto half = Rational(1, 2);
    const auto low = modgame::MixedStrategy::from_map(4, {{0, half}, {1, half}});
    const auto wide = modgame::MixedStrategy::from_map(4, {{0, half}, {2, half}});
    const modgame::Profile p{low, low, wide, wide};
    const auto v = modgame::verify_nash(modgame::distinct_preference_game(4, 4), p);
    if (!v) example.fail("profile is not an equilibrium", v.to_json());
    const auto d = modgame::outcome_distribution(p, 4);
    if (!d.is_uniform()) example.fail("outcome not uniform", strategy_json(d));
  }
  out.push_back(example.verdict());

  Check pure("modgame.parity_pure_profiles_fail");
  const auto parity = modgame::parity_game(1, 0);
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      const modgame::Profile p{modgame::MixedStrategy::point(2, x), modgame::MixedStrategy::point(2, y)};
      if (modgame::verify_nash(parity, p)) pure.fail("pure profile passed as an equilibrium", {{"plays", {x, y}}});
    }
  }
  out.push_back(pure.verdict());
  return out;
}

// ---- permute ----

std::vector<Verdict> permute_suite(int n, Rng& rng) {
  require_range("permute", n, 1, 6);
  std::vector<Verdict> out;

  Check round("permute.lehmer_roundtrip");
  const auto total = factorial(n).convert_to<std::int64_t>();
  std::vector<int> reversal(n);
  std::iota(reversal.rbegin(), reversal.rend(), 0);
  if (!(permute::lehmer_decode(0, n) == permute::Permutation::identity(n))) round.fail("code 0 is not the identity", {});
  if (!(permute::lehmer_decode(total - 1, n) == permute::Permutation(reversal))) round.fail("last code is not the reversal", {});
  for (std::int64_t c = 0; c < total && round.ok(); ++c) {
    const auto perm = permute::lehmer_decode(c, n);
    if (permute::lehmer_encode(perm) != c) round.fail("encode(decode(c)) != c", {{"code", c}, {"permutation", perm.values()}});
  }
  out.push_back(round.verdict());

  Check uni("permute.compact_uniform");
  std::vector<std::int64_t> ranges;
  for (int i = 0; i < n; ++i) ranges.push_back(permute::a_range(i, n));
  for (int i = 0; i < n; ++i) ranges.push_back(permute::b_range(i, n));
  std::map<std::vector<int>, std::uint64_t> counts;
  std::vector<std::int64_t> idx(2 * n, 0);
  for (;;) {
    permute::CompactBids bids;
    bids.a.assign(idx.begin(), idx.begin() + n);
    bids.b.assign(idx.begin() + n, idx.end());
    ++counts[permute::compact_priority_order(bids, n).values()];
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == ranges[k]) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  if (counts.size() != static_cast<std::size_t>(total)) {
    uni.fail("not every permutation is reachable", {{"n", n}, {"reached", counts.size()}});
  }
  for (const auto& [perm, c] : counts) {
    if (c != counts.begin()->second) {
      uni.fail("permutation counts differ", {{"n", n}, {"permutation", perm}, {"count", c}, {"first_count", counts.begin()->second}});
      break;
    }
  }
  out.push_back(uni.verdict());

  Check inverse("permute.positions_inverse");
  for (int s = 0; s < 100 && inverse.ok(); ++s) {
    const permute::Permutation p(random_ranking(n, rng));
    const auto pos = p.positions();
    for (int i = 0; i < n; ++i) {
      if (pos[p[i]] != i) inverse.fail("positions() is not the inverse", {{"permutation", p.values()}});
    }
  }
  out.push_back(inverse.verdict());
  return out;
}

// ---- simple ----

std::vector<Verdict> simple_suite(int n, std::uint64_t samples, Rng& rng) {
  require_range("simple", n, 1, 6);
  std::vector<Verdict> out;

  Check dict("simple.dictator_uniform");
  std::vector<std::uint64_t> hits(n, 0);
  std::vector<simple::DictatorBallot> ballots(n);
  for (int i = 0; i < n; ++i) ballots[i].preferred_candidate = "c" + std::to_string(i);
  for (;;) {
    ++hits[simple::dictator_index(ballots)];
    int k = 0;
    while (k < n && ++ballots[k].game_integer == n) ballots[k++].game_integer = 0;
    if (k == n) break;
  }
  for (int i = 0; i < n; ++i) {
    if (hits[i] != hits[0]) dict.fail("dictator counts differ", {{"agent", i}, {"count", hits[i]}, {"agent0_count", hits[0]}});
  }
  out.push_back(dict.verdict());

  Check lrm("simple.lrm_ratio");
  for (std::uint64_t s = 0; s < samples && lrm.ok(); ++s) {
    const auto pos = gen::random_positions(uniform_int(rng, 2, std::max(2, n)), rng);
    const auto r = simple::lrm_expected_ratio(pos);
    if (r != Rational(3, 2)) lrm.fail("expected ratio is not 3/2", {{"positions", rationals(pos)}, {"ratio", format_rational(r)}});
  }
  out.push_back(lrm.verdict());

  Check split("simple.lrm_outcome_split");
  {
    const auto pos = gen::random_positions(std::max(2, std::min(n, 5)), rng);
    std::vector<simple::FacilityReport> reports;
    for (const auto& p : pos) reports.push_back({0, p});
    const auto lo = *std::min_element(pos.begin(), pos.end());
    const auto hi = *std::max_element(pos.begin(), pos.end());
    std::map<std::string, std::uint64_t> tally;
    std::uint64_t cases = 0;
    for (;;) {
      ++tally[format_rational(simple::derand_lrm(reports))];
      ++cases;
      std::size_t k = 0;
      while (k < reports.size() && ++reports[k].game_integer == 4) reports[k++].game_integer = 0;
      if (k == reports.size()) break;
    }
    const std::map<std::string, std::uint64_t> want{
        {format_rational(lo), cases / 4}, {format_rational(hi), cases / 4}, {format_rational((lo + hi) / 2), cases / 2}};
    if (tally != want) split.fail("left/middle/right not drawn 1/4, 1/2, 1/4", {{"positions", rationals(pos)}, {"tally", tally}});
  }
  out.push_back(split.verdict());
  return out;
}

// ---- tasks ----

std::vector<Verdict> tasks_suite(int n, std::uint64_t samples, Rng& rng) {
  require_range("tasks", n, 1, tasks::kMaxExhaustiveTasks);
  std::vector<Verdict> out;

  Check approx("tasks.seven_fourths");
  for (std::uint64_t s = 0; s < samples && approx.ok(); ++s) {
    const auto t = gen::random_tasks(uniform_int(rng, 1, n), rng);
    const auto e = tasks::expected_makespan_uniform(t);
    const auto opt = tasks::optimal_makespan(t.truth());
    if (e > Rational(7, 4) * opt) {
      approx.fail("expected makespan above 7/4 of optimal",
                  {{"instance", tasks_json(t)}, {"expected", format_rational(e)}, {"optimal", format_rational(opt)}});
    }
  }
  out.push_back(approx.verdict());

  // For every fixed bit vector the mechanism must be truthful, which
  // implies truthfulness in expectation.
  Check truth("tasks.no_profitable_misreport");
  const std::uint64_t instances = std::max<std::uint64_t>(1, samples / 4);
  for (std::uint64_t s = 0; s < instances && truth.ok(); ++s) {
    const int m = uniform_int(rng, 1, std::min(n, 4));
    const auto t = gen::random_tasks(m, rng);
    for (int agent = 0; agent < 2 && truth.ok(); ++agent) {
      for (int j = 0; j < m && truth.ok(); ++j) {
        const Rational own = t.declared[agent][j];
        const Rational other = t.declared[1 - agent][j];
        const std::vector<Rational> grid{own / 2,   own * 3 / 4, own * 4 / 3, own * 2,
                                         other * 4 / 3, other * 3 / 4, other, other * 2};
        for (const auto& lie : grid) {
          auto reported = t;
          reported.true_times = t.declared;
          reported.declared[agent][j] = lie;
          for (int mask = 0; mask < (1 << m); ++mask) {
            std::vector<int> bits;
            for (int k = 0; k < m; ++k) bits.push_back((mask >> k) & 1);
            const auto honest = tasks::agent_utility(tasks::biased_min_work(t, bits), agent + 1, t.declared);
            const auto lying = tasks::agent_utility(tasks::biased_min_work(reported, bits), agent + 1, t.declared);
            if (lying > honest) {
              truth.fail("misreport is profitable",
                         {{"instance", tasks_json(t)}, {"agent", agent + 1}, {"task", j + 1}, {"report", format_rational(lie)},
                          {"bits", bits}, {"honest", format_rational(honest)}, {"lying", format_rational(lying)}});
              break;
            }
          }
        }
      }
    }
  }
  out.push_back(truth.verdict());
  return out;
}

// ---- peer ----

std::vector<Verdict> peer_suite(int n, std::uint64_t samples, std::uint64_t seed, Rng& rng) {
  require_range("peer", n, 2, 6);
  std::vector<Verdict> out;

  Check eq("peer.linear_matches_oracle");
  const auto orders = factorial(n).convert_to<std::int64_t>();
  for (std::uint64_t s = 0; s < samples && eq.ok(); ++s) {
    const auto profile = gen::random_peer_profile(n, rng);
    for (std::int64_t c = 0; c < orders; ++c) {
      const auto order = permute::lehmer_decode(c, n);
      const int lin = peer::spe_winner_linear(order, profile);
      const int orc = peer::spe_winner_oracle(order, profile);
      if (lin != orc) {
        eq.fail("reversal rule disagrees with backward induction",
                {{"prefs", profile.prefs}, {"order", order.values()}, {"linear", lin}, {"oracle", orc}});
        break;
      }
    }
  }
  out.push_back(eq.verdict());

  Check first("peer.first_eliminator_bid");
  for (std::uint64_t s = 0; s < samples && first.ok(); ++s) {
    std::vector<BigInt> bids;
    for (int i = 0; i < n; ++i) bids.emplace_back(uniform_below(rng, static_cast<std::uint64_t>(orders)));
    const int agent = uniform_int(rng, 0, n - 1);
    auto changed = bids;
    changed[agent] = peer::first_eliminator_bid(bids, agent);
    const auto r = peer::derand_rse(changed, gen::random_peer_profile(n, rng));
    if (r.order[0] != agent) first.fail("agent is not first after its replacement bid", {{"agent", agent}, {"order", r.order.values()}});
  }
  out.push_back(first.verdict());

  const int small = static_cast<int>(std::min<std::uint64_t>(samples, 200));
  auto expect = [&](const std::string& name, const Verdict& v, bool should_pass) {
    Check c(name);
    if (v.passed != should_pass) c.fail(should_pass ? "check failed" : "check unexpectedly passed", v.to_json());
    out.push_back(c.verdict());
  };
  expect("peer.rse_responsive",
         peer::check_responsive(peer::PeerMechanism::DerandRse, {.n = 3, .profile_samples = small, .seed = seed}), true);
  expect("peer.rse_not_impartial",
         peer::check_impartial(peer::PeerMechanism::DerandRse, {.n = 3, .profile_samples = small, .seed = seed}), false);
  expect("peer.partition_impartial", peer::check_impartial(peer::PeerMechanism::Partition, {.n = 4, .profile_samples = std::nullopt, .seed = seed}), true);
  expect("peer.partition_not_responsive", peer::check_responsive(peer::PeerMechanism::Partition, {.n = 4, .profile_samples = std::nullopt, .seed = seed}),
         false);
  return out;
}

// ---- school ----

std::vector<Verdict> school_suite(int n, std::uint64_t samples, Rng& rng) {
  require_range("school", n, 1, 6);
  std::vector<Verdict> out;
  const auto seeds = factorial(n).convert_to<std::int64_t>();

  Check stable("school.stable_every_seed");
  for (std::uint64_t s = 0; s < samples && stable.ok(); ++s) {
    const auto inst = gen::random_school(n, uniform_int(rng, 1, 3), rng);
    for (std::int64_t c = 0; c < seeds; ++c) {
      std::vector<BigInt> bids(n, BigInt(0));
      bids[0] = c;
      const auto t = school::derand_da(inst, bids);
      const auto v = school::is_stable(inst, t.priorities, t.matching);
      if (!v) {
        stable.fail("unstable matching", {{"instance", school_json(inst)}, {"seed", c}, {"verdict", v.to_json()}});
        break;
      }
    }
  }
  out.push_back(stable.verdict());

  Check compact("school.compact_stable");
  for (std::uint64_t s = 0; s < samples && compact.ok(); ++s) {
    const auto inst = gen::random_school(n, uniform_int(rng, 1, 3), rng);
    permute::CompactBids bids;
    for (int i = 0; i < n; ++i) bids.a.push_back(static_cast<std::int64_t>(uniform_below(rng, permute::a_range(i, n))));
    for (int i = 0; i < n; ++i) bids.b.push_back(static_cast<std::int64_t>(uniform_below(rng, permute::b_range(i, n))));
    const auto t = school::derand_da(inst, bids);
    const auto v = school::is_stable(inst, t.priorities, t.matching);
    if (!v) compact.fail("unstable matching", {{"instance", school_json(inst)}, {"a", bids.a}, {"b", bids.b}});
  }
  out.push_back(compact.verdict());

  // A student listing any ordered subset of schools never does better.
  Check sp("school.strategyproof");
  for (std::uint64_t s = 0; s < std::min<std::uint64_t>(samples, 100) && sp.ok(); ++s) {
    const int k = uniform_int(rng, 1, 3);
    const auto inst = gen::random_school(n, k, rng);
    std::vector<BigInt> bids(n, BigInt(0));
    bids[0] = static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(seeds)));
    const auto truthful = school::derand_da(inst, bids).matching;
    for (int st = 0; st < n && sp.ok(); ++st) {
      const auto& prefs = inst.student_prefs[st];
      auto rank_of = [&](std::optional<int> c) {
        if (!c) return static_cast<int>(prefs.size());
        const auto it = std::find(prefs.begin(), prefs.end(), *c);
        return it == prefs.end() ? static_cast<int>(prefs.size()) + 1 : static_cast<int>(it - prefs.begin());
      };
      for (int mask = 0; mask < (1 << k) && sp.ok(); ++mask) {
        std::vector<int> subset;
        for (int c = 0; c < k; ++c) {
          if ((mask >> c) & 1) subset.push_back(c);
        }
        do {
          auto lie = inst;
          lie.student_prefs[st] = subset;
          const auto got = school::derand_da(lie, bids).matching.school_of[st];
          if (rank_of(got) < rank_of(truthful.school_of[st])) {
            sp.fail("misreport improves the student's school",
                    {{"instance", school_json(inst)}, {"student", st}, {"report", subset}, {"seed", bids[0].str()}});
            break;
          }
        } while (std::next_permutation(subset.begin(), subset.end()));
      }
    }
  }
  out.push_back(sp.verdict());

  Check replay("school.transcript_replay");
  for (std::uint64_t s = 0; s < std::min<std::uint64_t>(samples, 50) && replay.ok(); ++s) {
    io::InstanceFile f;
    io::SchoolPayload payload;
    payload.instance = gen::random_school(n, uniform_int(rng, 1, 3), rng);
    std::vector<BigInt> bids;
    for (int i = 0; i < n; ++i) bids.emplace_back(uniform_below(rng, static_cast<std::uint64_t>(seeds)));
    payload.bids = bids;
    f.payload = payload;
    const auto text = io::to_json(f).dump();
    const auto first = io::run(io::parse_instance(text)).dump();
    const auto second = io::run(io::parse_instance(text)).dump();
    if (first != second) replay.fail("transcripts differ between runs", {{"instance", text}});
  }
  out.push_back(replay.verdict());
  return out;
}

// ---- alloc ----

std::vector<Verdict> alloc_suite(int n, std::uint64_t samples, Rng& rng) {
  require_range("alloc", n, 1, 5);
  std::vector<Verdict> out;

  Check denom("alloc.ps_denominator_bound");
  Check inv("alloc.ps_invariants");
  auto ps_checks = [&](const alloc::AllocInstance& inst) {
    const auto p = alloc::probabilistic_serial(inst).assignment;
    const auto v = alloc::denominator_bound_check(p, inst.n_agents(), inst.n_items);
    if (!v) denom.fail("denominator exceeds (n!)^m", {{"prefs", inst.prefs}, {"verdict", v.to_json()}});
    for (int j = 0; j < inst.n_items; ++j) {
      Rational col = 0;
      for (int i = 0; i < inst.n_agents(); ++i) col += p(i, j);
      if (col != 1) inv.fail("item not fully assigned", {{"prefs", inst.prefs}, {"item", j}});
    }
    for (int i = 0; i < inst.n_agents(); ++i) {
      Rational row = 0;
      for (int j = 0; j < inst.n_items; ++j) row += p(i, j);
      if (row != Rational(inst.n_items, inst.n_agents())) inv.fail("agent does not eat m/n", {{"prefs", inst.prefs}, {"agent", i}});
    }
    for (const auto& c : {alloc::sd_envy_free(p, inst), alloc::sd_efficient(p, inst)}) {
      if (!c) inv.fail(c.check + " failed", {{"prefs", inst.prefs}, {"verdict", c.to_json()}});
    }
  };
  {
    // Every profile at n = m = 3.
    alloc::AllocInstance inst{std::vector<std::vector<int>>(3), 3};
    std::vector<int> code(3, 0);
    for (;;) {
      for (int i = 0; i < 3; ++i) inst.prefs[i] = permute::lehmer_decode(code[i], 3).values();
      ps_checks(inst);
      int k = 0;
      while (k < 3 && ++code[k] == 6) code[k++] = 0;
      if (k == 3) break;
    }
  }
  for (std::uint64_t s = 0; s < samples; ++s) ps_checks(gen::random_alloc(uniform_int(rng, 1, n), uniform_int(rng, 1, n), rng));
  out.push_back(denom.verdict());
  out.push_back(inv.verdict());

  // sigma-enumeration of the realization: shifted draw is exact, the
  // literal draw is off by at most one quantum per entry and off somewhere.
  Check marg("alloc.realization_marginals");
  Check literal("alloc.literal_draw_one_quantum_bias");
  bool literal_biased = false;
  for (std::uint64_t s = 0; s < std::min<std::uint64_t>(samples, 100) && marg.ok(); ++s) {
    const auto inst = gen::random_alloc(uniform_int(rng, 2, std::min(n, 3)), uniform_int(rng, 1, 3), rng);
    const auto p = alloc::probabilistic_serial(inst).assignment;
    const auto d = alloc::reduced_denominator(p);
    if (d > 10'000) continue;
    const auto dd = d.convert_to<std::int64_t>();
    for (auto draw : {alloc::Draw::Shifted, alloc::Draw::Literal}) {
      alloc::RationalMatrix freq(inst.n_agents(), inst.n_items);
      for (std::int64_t sigma = 0; sigma < dd; ++sigma) {
        const auto a = alloc::realize_assignment(p, sigma, d, draw);
        for (int j = 0; j < inst.n_items; ++j) freq(a[j], j) += Rational(1, dd);
      }
      if (draw == alloc::Draw::Shifted) {
        if (!(freq == p)) marg.fail("realized marginals differ from the assignment", {{"prefs", inst.prefs}, {"modulus", dd}});
        continue;
      }
      for (int i = 0; i < p.rows(); ++i) {
        for (int j = 0; j < p.cols(); ++j) {
          const Rational gap = abs(freq(i, j) - p(i, j));
          if (gap > Rational(1, dd)) literal.fail("literal draw off by more than one quantum", {{"prefs", inst.prefs}});
          if (gap != 0) literal_biased = true;
        }
      }
    }
  }
  if (!literal_biased) literal.fail("literal draw showed no bias on the sampled instances", {});
  out.push_back(marg.verdict());
  out.push_back(literal.verdict());

  Check rp("alloc.rp_matches_oracle");
  for (std::uint64_t s = 0; s < std::min<std::uint64_t>(samples, 50) && rp.ok(); ++s) {
    const int agents = uniform_int(rng, 1, n);
    const auto inst = gen::random_alloc(agents, uniform_int(rng, 1, n + 1), rng);
    const auto seeds = factorial(agents).convert_to<std::int64_t>();
    alloc::RationalMatrix freq(agents, inst.n_items);
    for (std::int64_t c = 0; c < seeds; ++c) {
      std::vector<BigInt> bids(agents, BigInt(0));
      bids[0] = c;
      const auto a = alloc::derand_rp(bids, inst).allocation;
      for (int j = 0; j < inst.n_items; ++j) {
        if (a[j] >= 0) freq(a[j], j) += Rational(1, seeds);
      }
    }
    if (!(freq == alloc::rp_distribution_oracle(inst))) rp.fail("seed enumeration differs from the oracle", {{"prefs", inst.prefs}});
  }
  out.push_back(rp.verdict());

  Check pareto("alloc.serial_dictatorship_pareto");
  for (std::uint64_t s = 0; s < std::min<std::uint64_t>(samples, 100) && pareto.ok(); ++s) {
    const int agents = uniform_int(rng, 1, std::min(n, 4));
    const auto inst = gen::random_alloc(agents, uniform_int(rng, 1, 4), rng);
    const permute::Permutation order(random_ranking(agents, rng));
    const auto v = alloc::pareto_efficient(alloc::serial_dictatorship(order, inst), inst);
    if (!v) pareto.fail("serial dictatorship outcome is dominated", {{"prefs", inst.prefs}, {"verdict", v.to_json()}});
  }
  out.push_back(pareto.verdict());
  return out;
}

// ---- sim ----

std::vector<Verdict> sim_suite(std::uint64_t samples, std::uint64_t seed) {
  std::vector<Verdict> out;
  const auto mech = sim::modular_game(2, 2);
  const std::vector<sim::AgentPolicy> policies(2);
  const sim::Distribution uniform{{"0", Rational(1, 2)}, {"1", Rational(1, 2)}};
  const auto one = sim::run_trials(mech, policies, samples, seed, uniform, 1);
  const auto four = sim::run_trials(mech, policies, samples, seed, uniform, 4);

  Check tv("sim.parity_tv_below_0.02");
  if (!(*one.empirical_tv < Rational(1, 50))) tv.fail("TV to uniform too large", {{"tv", format_rational(*one.empirical_tv)}});
  out.push_back(tv.verdict());

  Check workers("sim.worker_count_independent");
  if (!(one == four)) workers.fail("tallies depend on the worker count", {{"one", io::to_json(one)}, {"four", io::to_json(four)}});
  out.push_back(workers.verdict());

  Check exact("sim.exact_uniform_absorbs_fixed");
  const std::vector<sim::AgentPolicy> mixed{{sim::Fixed{1}, std::nullopt}, {sim::Uniform{}, std::nullopt}};
  if (sim::exact_distribution(sim::modular_game(2, 5), mixed) != sim::to_distribution(modgame::MixedStrategy::uniform(5))) {
    exact.fail("one uniform agent does not make the outcome uniform", {});
  }
  out.push_back(exact.verdict());
  return out;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"modgame", "permute", "simple", "tasks", "peer", "school", "alloc", "sim"};
  return names;
}

std::vector<Verdict> run_suite(std::string_view suite, const SuiteOptions& options) {
  Rng rng(splitmix64(options.seed));
  auto n = [&](int fallback) { return options.n.value_or(fallback); };
  auto samples = [&](std::uint64_t fallback) { return options.samples.value_or(fallback); };
  if (suite == "modgame") return modgame_suite(n(4), samples(100), rng);
  if (suite == "permute") return permute_suite(n(5), rng);
  if (suite == "simple") return simple_suite(n(5), samples(1000), rng);
  if (suite == "tasks") return tasks_suite(n(8), samples(200), rng);
  if (suite == "peer") return peer_suite(n(4), samples(200), options.seed, rng);
  if (suite == "school") return school_suite(n(4), samples(200), rng);
  if (suite == "alloc") return alloc_suite(n(4), samples(200), rng);
  if (suite == "sim") return sim_suite(samples(100'000), options.seed);
  throw ValidationError("unknown suite \"" + std::string(suite) + "\"");
}

}  // namespace derand::verify
