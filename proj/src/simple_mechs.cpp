#include "derand/simple_mechs.hpp"

#include <algorithm>
#include <string>

#include "derand/error.hpp"
#include "derand/modgame.hpp"

namespace derand::simple {

namespace {

constexpr std::int64_t kLrmModulus = 4;

std::pair<Rational, Rational> extremes(std::span<const Rational> positions) {
  const auto [lo, hi] = std::minmax_element(positions.begin(), positions.end());
  return {*lo, *hi};
}

}  // namespace

std::size_t dictator_index(std::span<const DictatorBallot> ballots) {
  if (ballots.empty()) throw ValidationError("dictator vote needs at least one ballot");
  std::vector<std::int64_t> plays;
  plays.reserve(ballots.size());
  for (const auto& b : ballots) plays.push_back(b.game_integer);
  return static_cast<std::size_t>(modgame::outcome_sum(plays, static_cast<std::int64_t>(ballots.size())));
}

std::string derand_dictator(std::span<const DictatorBallot> ballots) {
  return ballots[dictator_index(ballots)].preferred_candidate;
}

Rational derand_lrm(std::span<const FacilityReport> reports) {
  if (reports.empty()) throw ValidationError("facility location needs at least one report");
  std::vector<std::int64_t> plays;
  std::vector<Rational> positions;
  for (const auto& r : reports) {
    plays.push_back(r.game_integer);
    positions.push_back(r.position);
  }
  const int s = modgame::outcome_sum(plays, kLrmModulus);
  const auto [left, right] = extremes(positions);
  switch (s) {
    case 0:
      return left;
    case 3:
      return right;
    default:
      return (left + right) / 2;
  }
}

Rational max_cost(const Rational& location, std::span<const Rational> positions) {
  if (positions.empty()) throw ValidationError("max cost over no agents");
  Rational worst = 0;
  for (const auto& x : positions) worst = std::max(worst, Rational(abs(location - x)));
  return worst;
}

Rational lrm_expected_ratio(std::span<const Rational> positions) {
  if (positions.empty()) throw ValidationError("ratio over no agents");
  const auto [left, right] = extremes(positions);
  const Rational optimal = (right - left) / 2;
  if (optimal == 0) return 1;
  const Rational expected = Rational(1, 4) * max_cost(left, positions) +
                            Rational(1, 2) * max_cost((left + right) / 2, positions) +
                            Rational(1, 4) * max_cost(right, positions);
  return expected / optimal;
}

}  // namespace derand::simple
