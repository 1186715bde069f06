#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace derand {

/// splitmix64 finalizer; the seed-splitting primitive used everywhere a
/// per-item seed is derived from a master seed.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

using Rng = std::mt19937_64;

/// Uniform integer in [0, bound) by rejection on raw 64-bit output. Unlike
/// std::uniform_int_distribution the result is fixed across standard
/// libraries.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = (~std::uint64_t{0}) - ((~std::uint64_t{0}) % bound + 1) % bound;
  for (;;) {
    const std::uint64_t x = rng();
    if (x <= limit) return x % bound;
  }
}

inline int uniform_int(Rng& rng, int lo, int hi_inclusive) {
  return lo + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(hi_inclusive - lo) + 1));
}

/// Fisher-Yates with uniform_below.
template <class T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(v[i - 1], v[j]);
  }
}

inline std::vector<int> random_ranking(int n, Rng& rng) {
  std::vector<int> r(n);
  for (int i = 0; i < n; ++i) r[i] = i;
  shuffle(r, rng);
  return r;
}

}  // namespace derand
