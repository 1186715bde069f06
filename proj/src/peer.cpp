#include "derand/peer.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "derand/error.hpp"
#include "derand/modgame.hpp"

namespace derand::peer {

namespace {

void check_order(const EliminationOrder& order, int n) {
  if (order.size() != n) {
    throw ValidationError("elimination order covers " + std::to_string(order.size()) + " agents, profile has " +
                          std::to_string(n));
  }
}

int plurality(const std::vector<int>& tally) {
  int best = 0;
  for (int c = 1; c < static_cast<int>(tally.size()); ++c) {
    if (tally[c] > tally[best]) best = c;
  }
  return best;
}

// Each voter in [voters_lo, voters_hi) votes for its top choice in
// [cands_lo, cands_hi).
int side_candidate(const PeerProfile& profile, int voters_lo, int voters_hi, int cands_lo, int cands_hi) {
  std::vector<int> tally(profile.n(), 0);
  for (int v = voters_lo; v < voters_hi; ++v) {
    for (int c : profile.prefs[v]) {
      if (c >= cands_lo && c < cands_hi) {
        ++tally[c];
        break;
      }
    }
  }
  return plurality(tally);
}

}  // namespace

int PeerProfile::rank(int agent, int candidate) const {
  const auto& p = prefs.at(agent);
  return static_cast<int>(std::find(p.begin(), p.end(), candidate) - p.begin());
}

void validate(const PeerProfile& profile) {
  const int n = profile.n();
  if (n < 1) throw ValidationError("peer profile needs at least one agent");
  for (int i = 0; i < n; ++i) {
    try {
      if (static_cast<int>(profile.prefs[i].size()) != n) throw ValidationError("wrong length");
      permute::Permutation check(profile.prefs[i]);
    } catch (const ValidationError& e) {
      throw ValidationError("ranking of agent " + std::to_string(i) + " is not a permutation of [0," +
                            std::to_string(n) + "): " + e.what());
    }
  }
}

int run_sequential_elimination(const EliminationOrder& order, std::span<const int> choices) {
  const int n = order.size();
  if (n < 1) throw ValidationError("elimination needs at least one agent");
  if (choices.size() != static_cast<std::size_t>(n - 1)) {
    throw ValidationError("expected " + std::to_string(n - 1) + " eliminations, got " + std::to_string(choices.size()));
  }
  std::vector<bool> alive(n, true);
  for (int t = 0; t < n - 1; ++t) {
    const int c = choices[t];
    if (c < 0 || c >= n || !alive[c]) {
      throw ProtocolError("step " + std::to_string(t) + ": agent " + std::to_string(order[t]) +
                          " cannot eliminate " + std::to_string(c) + ", not a remaining candidate");
    }
    alive[c] = false;
  }
  return static_cast<int>(std::find(alive.begin(), alive.end(), true) - alive.begin());
}

int spe_winner_linear(const EliminationOrder& order, const PeerProfile& profile) {
  const int n = profile.n();
  check_order(order, n);
  std::vector<bool> alive(n, true);
  for (int t = n - 2; t >= 0; --t) {
    const auto& ranking = profile.prefs[order[t]];
    for (auto it = ranking.rbegin(); it != ranking.rend(); ++it) {
      if (alive[*it]) {
        alive[*it] = false;
        break;
      }
    }
  }
  return static_cast<int>(std::find(alive.begin(), alive.end(), true) - alive.begin());
}

int spe_winner_oracle(const EliminationOrder& order, const PeerProfile& profile, std::span<const int> history) {
  const int n = profile.n();
  if (n > kMaxOracleAgents) {
    throw CapacityError("backward induction is limited to " + std::to_string(kMaxOracleAgents) + " agents, got " +
                        std::to_string(n));
  }
  check_order(order, n);
  if (history.size() > static_cast<std::size_t>(std::max(0, n - 1))) {
    throw ValidationError("history longer than the game");
  }
  unsigned start = (1U << n) - 1;
  for (std::size_t t = 0; t < history.size(); ++t) {
    const int c = history[t];
    if (c < 0 || c >= n || !(start & (1U << c))) {
      throw ProtocolError("step " + std::to_string(t) + ": " + std::to_string(c) + " is not a remaining candidate");
    }
    start &= ~(1U << c);
  }

  // Winner of the subgame with remaining set `mask`; the step is implied by
  // how many candidates are gone.
  std::vector<int> memo(std::size_t{1} << n, -1);
  auto solve = [&](auto&& self, unsigned mask) -> int {
    if (std::popcount(mask) == 1) return std::countr_zero(mask);
    if (memo[mask] >= 0) return memo[mask];
    const int step = n - std::popcount(mask);
    const int eliminator = order[step];
    int best = -1;
    for (int c = 0; c < n; ++c) {
      if (!(mask & (1U << c))) continue;
      const int w = self(self, mask & ~(1U << c));
      if (best < 0 || profile.rank(eliminator, w) < profile.rank(eliminator, best)) best = w;
    }
    return memo[mask] = best;
  };
  return solve(solve, start);
}

RseOutcome derand_rse(std::span<const BigInt> bids, const PeerProfile& profile, const SecondStage& play) {
  validate(profile);
  const int n = profile.n();
  if (bids.size() != static_cast<std::size_t>(n)) {
    throw ValidationError("expected " + std::to_string(n) + " bids, got " + std::to_string(bids.size()));
  }
  RseOutcome out;
  out.seed = modgame::outcome_sum(bids, factorial(n));
  out.order = permute::lehmer_decode(out.seed, n);
  if (const auto* choices = std::get_if<std::vector<int>>(&play)) {
    out.winner = run_sequential_elimination(out.order, *choices);
  } else {
    out.winner = spe_winner_linear(out.order, profile);
  }
  return out;
}

BigInt first_eliminator_bid(std::span<const BigInt> bids, int agent) {
  const int n = static_cast<int>(bids.size());
  if (agent < 0 || agent >= n) throw RangeError("agent " + std::to_string(agent) + " out of range");
  const BigInt total = factorial(n);
  BigInt others = 0;
  for (int i = 0; i < n; ++i) {
    if (i != agent) others += bids[i];
  }
  // The leading Lehmer digit selects the first agent directly.
  const BigInt target = BigInt(agent) * factorial(n - 1);
  return mod_floor(target - others, total);
}

PartitionOutcome partition_winner(const PeerProfile& profile, std::span<const int> parity_bits) {
  validate(profile);
  const int n = profile.n();
  if (n < 4) throw ValidationError("partition mechanism needs at least 4 agents, got " + std::to_string(n));
  if (parity_bits.size() != static_cast<std::size_t>(n - 2)) {
    throw ValidationError("expected " + std::to_string(n - 2) + " parity bits (one per non-candidate), got " +
                          std::to_string(parity_bits.size()));
  }
  const int split = (n + 1) / 2;
  PartitionOutcome out;
  out.candidate1 = side_candidate(profile, split, n, 0, split);
  out.candidate2 = side_candidate(profile, 0, split, split, n);
  int parity = 0;
  for (std::size_t k = 0; k < parity_bits.size(); ++k) {
    if (parity_bits[k] != 0 && parity_bits[k] != 1) {
      throw RangeError("parity bit " + std::to_string(k) + " is " + std::to_string(parity_bits[k]) + ", not 0 or 1");
    }
    parity ^= parity_bits[k];
  }
  for (int i = 0; i < n; ++i) {
    if (i != out.candidate1 && i != out.candidate2) out.non_candidates.push_back(i);
  }
  out.winner = parity == 0 ? out.candidate1 : out.candidate2;
  return out;
}

const char* mechanism_name(PeerMechanism mechanism) {
  switch (mechanism) {
    case PeerMechanism::DerandRse:
      return "derand_rse";
    case PeerMechanism::FixedOrderSe:
      return "fixed_order_se";
    case PeerMechanism::Partition:
      return "partition";
    case PeerMechanism::Constant:
      return "constant";
  }
  return "unknown";
}

}  // namespace derand::peer
