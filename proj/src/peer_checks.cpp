// Responsiveness and impartiality checkers. Each mechanism is modelled by
// its configuration space (everyone's reports) and, per agent, the set of
// unilateral report changes.

#include <algorithm>
#include <functional>
#include <optional>
#include <string>

#include "derand/error.hpp"
#include "derand/peer.hpp"
#include "derand/random.hpp"

namespace derand::peer {

namespace {

using Ranking = std::vector<int>;
using nlohmann::json;

std::vector<Ranking> all_rankings(int n) {
  Ranking r(n);
  for (int i = 0; i < n; ++i) r[i] = i;
  std::vector<Ranking> out;
  do {
    out.push_back(r);
  } while (std::next_permutation(r.begin(), r.end()));
  return out;
}

std::uint64_t checked_power(std::uint64_t base, int exp, std::uint64_t cap) {
  std::uint64_t v = 1;
  for (int i = 0; i < exp; ++i) {
    if (v > cap / std::max<std::uint64_t>(base, 1)) return cap + 1;
    v *= base;
  }
  return v;
}

// Mixed-radix odometer; returns false after the last tuple.
bool advance(std::vector<int>& digits, const std::vector<int>& radix) {
  for (std::size_t k = 0; k < digits.size(); ++k) {
    if (++digits[k] < radix[k]) return true;
    digits[k] = 0;
  }
  return false;
}

// Calls f(profile) for every profile of rankings, exhaustive or sampled.
template <class F>
void for_each_ranking_profile(const CheckSpace& space, const std::vector<Ranking>& rankings, F&& f) {
  const int n = space.n;
  if (space.profile_samples) {
    Rng rng(splitmix64(space.seed));
    for (int s = 0; s < *space.profile_samples; ++s) {
      PeerProfile p;
      for (int i = 0; i < n; ++i) p.prefs.push_back(random_ranking(n, rng));
      if (!f(p)) return;
    }
    return;
  }
  if (checked_power(rankings.size(), n, kMaxExhaustiveProfiles) > kMaxExhaustiveProfiles) {
    throw CapacityError("exhaustive profile enumeration at n=" + std::to_string(n) + " is too large; sample instead");
  }
  std::vector<int> digits(n, 0);
  const std::vector<int> radix(n, static_cast<int>(rankings.size()));
  do {
    PeerProfile p;
    for (int i = 0; i < n; ++i) p.prefs.push_back(rankings[digits[i]]);
    if (!f(p)) return;
  } while (advance(digits, radix));
}

struct RseModel {
  struct Config {
    std::vector<int> bids;
    PeerProfile profile;
  };

  int n;
  int total;  // n!
  std::vector<EliminationOrder> orders;
  std::vector<Ranking> rankings;

  explicit RseModel(int agents) : n(agents), total(static_cast<int>(factorial(agents))), rankings(all_rankings(agents)) {
    for (int s = 0; s < total; ++s) orders.push_back(permute::lehmer_decode(s, n));
  }

  int winner(const Config& c) const {
    int seed = 0;
    for (int b : c.bids) seed = (seed + b) % total;
    return spe_winner_linear(orders[seed], c.profile);
  }

  template <class F>
  void for_each_config(const CheckSpace& space, F&& f) const {
    const bool exhaustive = checked_power(total, n, kMaxExhaustiveBidVectors) <= kMaxExhaustiveBidVectors;
    Rng rng(splitmix64(space.seed ^ 0x5eedULL));
    for_each_ranking_profile(space, rankings, [&](const PeerProfile& p) {
      Config c{std::vector<int>(n, 0), p};
      if (exhaustive) {
        const std::vector<int> radix(n, total);
        do {
          if (!f(c)) return false;
        } while (advance(c.bids, radix));
        return true;
      }
      for (int s = 0; s < space.bid_samples; ++s) {
        for (auto& b : c.bids) b = static_cast<int>(uniform_below(rng, total));
        if (!f(c)) return false;
      }
      return true;
    });
  }

  template <class G>
  void for_each_deviation(const Config& c, int agent, G&& g) const {
    Config d = c;
    for (int bid = 0; bid < total; ++bid) {
      d.bids[agent] = bid;
      for (const auto& r : rankings) {
        d.profile.prefs[agent] = r;
        if (!g(winner(d), [&] { return json{{"bid", bid}, {"ranking", r}}; })) return;
      }
    }
  }

  json describe(const Config& c) const { return {{"bids", c.bids}, {"prefs", c.profile.prefs}}; }
};

// Reports are rankings; the winner is a function of the profile.
struct RankingModel {
  using Config = PeerProfile;

  int n;
  std::vector<Ranking> rankings;
  std::function<int(const PeerProfile&)> rule;

  int winner(const Config& c) const { return rule(c); }

  template <class F>
  void for_each_config(const CheckSpace& space, F&& f) const {
    for_each_ranking_profile(space, rankings, f);
  }

  template <class G>
  void for_each_deviation(const Config& c, int agent, G&& g) const {
    Config d = c;
    for (const auto& r : rankings) {
      d.prefs[agent] = r;
      if (!g(winner(d), [&] { return json{{"ranking", r}}; })) return;
    }
  }

  json describe(const Config& c) const { return {{"prefs", c.prefs}}; }
};

// Only a voter's top choice on the other side matters, so votes stand in
// for rankings. The parity bits are a list filled by the non-candidates in
// ascending id order.
struct PartitionModel {
  struct Config {
    std::vector<int> votes;
    std::vector<int> bits;
  };

  int n;
  int split;

  explicit PartitionModel(int agents) : n(agents), split((agents + 1) / 2) {}

  std::pair<int, int> opposite(int agent) const { return agent < split ? std::pair{split, n} : std::pair{0, split}; }

  PeerProfile profile(const Config& c) const {
    PeerProfile p;
    for (int i = 0; i < n; ++i) {
      Ranking r{c.votes[i]};
      for (int j = 0; j < n; ++j) {
        if (j != c.votes[i]) r.push_back(j);
      }
      p.prefs.push_back(std::move(r));
    }
    return p;
  }

  PartitionOutcome outcome(const Config& c) const { return partition_winner(profile(c), c.bits); }
  int winner(const Config& c) const { return outcome(c).winner; }

  template <class F>
  void for_each_config(const CheckSpace& space, F&& f) const {
    std::vector<int> radix;
    for (int i = 0; i < n; ++i) {
      const auto [lo, hi] = opposite(i);
      radix.push_back(hi - lo);
    }
    for (int k = 0; k < n - 2; ++k) radix.push_back(2);
    auto decode = [&](const std::vector<int>& digits) {
      Config c;
      for (int i = 0; i < n; ++i) c.votes.push_back(opposite(i).first + digits[i]);
      c.bits.assign(digits.begin() + n, digits.end());
      return c;
    };
    if (space.profile_samples) {
      Rng rng(splitmix64(space.seed));
      std::vector<int> digits(radix.size());
      for (int s = 0; s < *space.profile_samples; ++s) {
        for (std::size_t k = 0; k < radix.size(); ++k) digits[k] = static_cast<int>(uniform_below(rng, radix[k]));
        if (!f(decode(digits))) return;
      }
      return;
    }
    std::uint64_t count = 1;
    for (int r : radix) {
      count *= static_cast<std::uint64_t>(r);
      if (count > kMaxExhaustiveProfiles) {
        throw CapacityError("exhaustive vote enumeration at n=" + std::to_string(n) + " is too large; sample instead");
      }
    }
    std::vector<int> digits(radix.size(), 0);
    do {
      if (!f(decode(digits))) return;
    } while (advance(digits, radix));
  }

  template <class G>
  void for_each_deviation(const Config& c, int agent, G&& g) const {
    const auto [lo, hi] = opposite(agent);
    for (int vote = lo; vote < hi; ++vote) {
      Config d = c;
      d.votes[agent] = vote;
      const auto o = outcome(d);
      const auto slot = std::find(o.non_candidates.begin(), o.non_candidates.end(), agent);
      if (slot == o.non_candidates.end()) {
        if (!g(o.winner, [&] { return json{{"vote", vote}}; })) return;
        continue;
      }
      for (int bit = 0; bit < 2; ++bit) {
        d.bits[slot - o.non_candidates.begin()] = bit;
        if (!g(winner(d), [&] { return json{{"vote", vote}, {"bit", bit}}; })) return;
      }
    }
  }

  json describe(const Config& c) const { return {{"votes", c.votes}, {"parity_bits", c.bits}}; }
};

template <class Model>
Verdict responsive_impl(const Model& model, const CheckSpace& space, const std::string& check) {
  std::optional<Verdict> failure;
  model.for_each_config(space, [&](const typename Model::Config& c) {
    for (int i = 0; i < model.n; ++i) {
      int first = -1;
      bool moved = false;
      model.for_each_deviation(c, i, [&](int w, auto&&) {
        if (first < 0) first = w;
        moved = w != first;
        return !moved;
      });
      if (!moved) {
        failure = Verdict::fail(check,
                                "agent " + std::to_string(i) + " cannot change the winner " + std::to_string(first),
                                {{"agent", i}, {"configuration", model.describe(c)}, {"winner", first}});
        return false;
      }
    }
    return true;
  });
  return failure ? *failure : Verdict::pass(check);
}

template <class Model>
Verdict impartial_impl(const Model& model, const CheckSpace& space, const std::string& check) {
  std::optional<Verdict> failure;
  model.for_each_config(space, [&](const typename Model::Config& c) {
    const int base = model.winner(c);
    for (int i = 0; i < model.n; ++i) {
      model.for_each_deviation(c, i, [&](int w, auto&& report) {
        if ((w == i) == (base == i)) return true;
        failure = Verdict::fail(check, "agent " + std::to_string(i) + " changes whether it wins",
                                {{"agent", i},
                                 {"configuration", model.describe(c)},
                                 {"winner", base},
                                 {"deviation", report()},
                                 {"winner_after", w}});
        return false;
      });
      if (failure) return false;
    }
    return true;
  });
  return failure ? *failure : Verdict::pass(check);
}

template <class Visitor>
Verdict dispatch(PeerMechanism mechanism, const CheckSpace& space, Visitor&& visit) {
  const int n = space.n;
  switch (mechanism) {
    case PeerMechanism::DerandRse:
      if (n < 2 || n > 5) throw CapacityError("derand_rse checks support 2 <= n <= 5");
      return visit(RseModel(n));
    case PeerMechanism::FixedOrderSe:
      return visit(RankingModel{n, all_rankings(n), [n](const PeerProfile& p) {
                                  return spe_winner_linear(EliminationOrder::identity(n), p);
                                }});
    case PeerMechanism::Partition:
      return visit(PartitionModel(n));
    case PeerMechanism::Constant:
      return visit(RankingModel{n, all_rankings(n), [](const PeerProfile&) { return 0; }});
  }
  throw ValidationError("unknown peer mechanism");
}

void check_space(const CheckSpace& space) {
  if (space.n < 2 || space.n > kMaxOracleAgents) {
    throw CapacityError("checker supports 2 <= n <= " + std::to_string(kMaxOracleAgents));
  }
}

}  // namespace

Verdict check_responsive(PeerMechanism mechanism, const CheckSpace& space) {
  check_space(space);
  const std::string check = std::string("responsive:") + mechanism_name(mechanism);
  return dispatch(mechanism, space, [&](const auto& model) { return responsive_impl(model, space, check); });
}

Verdict check_impartial(PeerMechanism mechanism, const CheckSpace& space) {
  check_space(space);
  const std::string check = std::string("impartial:") + mechanism_name(mechanism);
  return dispatch(mechanism, space, [&](const auto& model) { return impartial_impl(model, space, check); });
}

}  // namespace derand::peer
