#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "derand/permute.hpp"
#include "derand/rational.hpp"
#include "derand/verdict.hpp"

namespace derand::peer {

/// prefs[i] ranks all n agents (self included), most preferred first.
struct PeerProfile {
  std::vector<std::vector<int>> prefs;

  int n() const { return static_cast<int>(prefs.size()); }
  /// 0 = top choice.
  int rank(int agent, int candidate) const;

  bool operator==(const PeerProfile&) const = default;
};

void validate(const PeerProfile& profile);

using EliminationOrder = permute::Permutation;

inline constexpr int kMaxOracleAgents = 7;

/// The first n-1 agents of `order` eliminate in turn; step t removes
/// choices[t]. An agent already eliminated as a candidate keeps its turn.
/// Returns the survivor.
int run_sequential_elimination(const EliminationOrder& order, std::span<const int> choices);

/// Subgame-perfect winner by the reversal rule: the eliminators act in
/// reverse order, each removing its least preferred remaining candidate.
int spe_winner_linear(const EliminationOrder& order, const PeerProfile& profile);

/// Subgame-perfect winner by backward induction over the full game tree
/// (n <= 7). `history` holds eliminations already made by the first
/// history.size() eliminators; play continues from there.
int spe_winner_oracle(const EliminationOrder& order, const PeerProfile& profile, std::span<const int> history = {});

/// Second stage of the de-randomized mechanism: the equilibrium
/// continuation, or an explicit list of n-1 eliminations.
struct SincereReversed {
  bool operator==(const SincereReversed&) const = default;
};
using SecondStage = std::variant<SincereReversed, std::vector<int>>;

struct RseOutcome {
  BigInt seed;
  EliminationOrder order;
  int winner = 0;
};

/// Order = lehmer_decode((sum of bids) mod n!, n), then the second stage.
RseOutcome derand_rse(std::span<const BigInt> bids, const PeerProfile& profile,
                      const SecondStage& play = SincereReversed{});

/// A replacement bid for `agent` that makes it the first eliminator while
/// the other bids stay fixed.
BigInt first_eliminator_bid(std::span<const BigInt> bids, int agent);

struct PartitionOutcome {
  int candidate1 = 0;  // from S1, chosen by S2
  int candidate2 = 0;  // from S2, chosen by S1
  std::vector<int> non_candidates;
  int winner = 0;
};

/// S1 = agents [0, ceil(n/2)), S2 = the rest. Each voter votes for its top
/// member of the other side; each side's candidate is the plurality winner
/// of those votes (ties to the lowest id). parity_bits holds one bit per
/// non-candidate in ascending id order; an even xor picks candidate1.
PartitionOutcome partition_winner(const PeerProfile& profile, std::span<const int> parity_bits);

enum class PeerMechanism {
  DerandRse,     // reports: (bid, ranking); equilibrium second stage
  FixedOrderSe,  // identity order; reports: rankings
  Partition,     // reports: (vote, parity bit when a non-candidate)
  Constant,      // always agent 0
};

/// Configuration space for the checkers. Profiles (rankings, or votes and
/// parity bits) are enumerated exhaustively unless profile_samples is set.
/// DerandRse enumerates every bid vector when there are at most
/// kMaxExhaustiveBidVectors of them, else draws bid_samples per profile.
struct CheckSpace {
  int n = 3;
  std::optional<int> profile_samples;
  int bid_samples = 32;
  std::uint64_t seed = 0;
};

inline constexpr std::uint64_t kMaxExhaustiveBidVectors = 50'000;
inline constexpr std::uint64_t kMaxExhaustiveProfiles = 1'000'000;

/// Passes iff in every configuration every agent has two reports giving
/// different winners. The witness names an agent whose reports cannot
/// move the winner.
Verdict check_responsive(PeerMechanism mechanism, const CheckSpace& space);

/// Passes iff in no configuration can an agent change whether it wins.
Verdict check_impartial(PeerMechanism mechanism, const CheckSpace& space);

const char* mechanism_name(PeerMechanism mechanism);

}  // namespace derand::peer
