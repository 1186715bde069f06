#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "derand/rational.hpp"

namespace derand::simple {

/// A voter's integer for the dictator game plus their preferred winner.
/// Candidates are opaque identifiers.
struct DictatorBallot {
  std::int64_t game_integer = 0;
  std::string preferred_candidate;

  bool operator==(const DictatorBallot&) const = default;
};

/// An agent's integer in [0,4) for the location game plus its reported
/// position on the line.
struct FacilityReport {
  std::int64_t game_integer = 0;
  Rational position;

  bool operator==(const FacilityReport&) const = default;
};

/// Index of the dictator: (sum of integers) mod n, 0-based.
std::size_t dictator_index(std::span<const DictatorBallot> ballots);
/// Preferred candidate of the ballot at dictator_index.
std::string derand_dictator(std::span<const DictatorBallot> ballots);

/// s = (sum of integers) mod 4: 0 leftmost, 1 or 2 midpoint, 3 rightmost.
Rational derand_lrm(std::span<const FacilityReport> reports);

Rational max_cost(const Rational& location, std::span<const Rational> positions);

/// Expected maximum cost under the LRM lottery (1/4 left, 1/2 mid, 1/4
/// right) over the optimal maximum cost (max-min)/2. Collocated agents
/// have optimal cost 0; the ratio is then defined as 1.
Rational lrm_expected_ratio(std::span<const Rational> positions);

}  // namespace derand::simple
