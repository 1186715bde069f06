#pragma once

#include <span>
#include <vector>

#include "derand/permute.hpp"
#include "derand/rational.hpp"
#include "derand/verdict.hpp"

namespace derand::alloc {

/// n agents, m items; prefs[i] ranks all items, best first.
struct AllocInstance {
  std::vector<std::vector<int>> prefs;
  int n_items = 0;

  int n_agents() const { return static_cast<int>(prefs.size()); }
  bool operator==(const AllocInstance&) const = default;
};

void validate(const AllocInstance& instance);

/// p(i, j) = probability agent i receives item j.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}
  explicit RationalMatrix(const std::vector<std::vector<Rational>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Rational& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  std::vector<std::vector<Rational>> to_rows() const;

  bool operator==(const RationalMatrix&) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> data_;
};

/// One phase of the eating simulation. eaters[j] counts agents eating item
/// j during [start, end); consumed lists the items finished at `end`.
struct EatingStep {
  Rational start;
  Rational end;
  std::vector<int> eaters;
  std::vector<int> consumed;
};

using EatingTrace = std::vector<EatingStep>;

struct PsResult {
  RationalMatrix assignment;
  EatingTrace trace;
};

/// Simultaneous eating at unit speed; every step ends when at least one
/// item is used up.
PsResult probabilistic_serial(const AllocInstance& instance);

/// (n!)^m.
BigInt factorial_power(int n, int m);

/// Passes iff every entry's reduced denominator divides (n!)^m.
Verdict denominator_bound_check(const RationalMatrix& p, int n, int m);

/// lcm of all reduced entry denominators.
BigInt reduced_denominator(const RationalMatrix& p);

/// item -> agent
using Allocation = std::vector<int>;

/// Shifted: draw (sigma+1)/N, exact marginals. Literal: draw sigma/N, which
/// over-weights the first agent of each column by one quantum.
enum class Draw { Shifted, Literal };

/// Item j goes to the first agent k with p(0,j)+...+p(k,j) >= draw. One
/// sigma is shared by all columns.
Allocation realize_assignment(const RationalMatrix& p, const BigInt& sigma, const BigInt& modulus,
                              Draw draw = Draw::Shifted);

/// Agents pick their best remaining item in `order`; when m > n the order
/// repeats round-robin until the items run out.
Allocation serial_dictatorship(const permute::Permutation& order, const AllocInstance& instance);

struct RpTranscript {
  std::vector<BigInt> bids;
  BigInt seed;
  permute::Permutation order;
  Allocation allocation;
};

/// order = lehmer_decode((sum of bids) mod n!, n), then serial dictatorship.
RpTranscript derand_rp(std::span<const BigInt> bids, const AllocInstance& instance);

enum class ModulusChoice { Factorial, Reduced };

struct PsTranscript {
  RationalMatrix assignment;
  BigInt modulus;
  std::vector<BigInt> bids;
  BigInt sigma;
  Draw draw = Draw::Shifted;
  Allocation allocation;
};

/// Game-last realization: PS matrix first, then sigma = (sum of bids) mod N
/// with N = (n!)^m or the reduced common denominator.
PsTranscript derand_ps(std::span<const BigInt> bids, const AllocInstance& instance,
                       ModulusChoice modulus = ModulusChoice::Factorial, Draw draw = Draw::Shifted);

inline constexpr int kMaxOracleAgents = 7;
inline constexpr int kMaxParetoAgents = 6;

/// Mean of serial dictatorship over all n! orders (n <= 7).
RationalMatrix rp_distribution_oracle(const AllocInstance& instance);

/// Indicator matrix of a discrete allocation.
RationalMatrix allocation_matrix(const Allocation& allocation, int n_agents);

/// Passes iff no agent SD-envies another: for all i, i' and prefix length t
/// of i's ranking, i's top-t mass under row i is at least that under row i'.
Verdict sd_envy_free(const RationalMatrix& p, const AllocInstance& instance);

/// Passes iff the relation {a -> b : some agent ranks a over b and gets b
/// with positive probability} over items is acyclic.
Verdict sd_efficient(const RationalMatrix& p, const AllocInstance& instance);

/// Passes iff no reallocation SD-dominates the bundles of all agents with at
/// least one strict improvement. Bundles compare by prefix counts over the
/// agent's ranking. Exhaustive; n <= 6.
Verdict pareto_efficient(const Allocation& allocation, const AllocInstance& instance);

}  // namespace derand::alloc
