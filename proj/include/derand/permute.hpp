#pragma once

#include <cstdint>
#include <vector>

#include "derand/rational.hpp"

namespace derand::permute {

/// A bijection on [0, n), stored as the sequence (p[0], ..., p[n-1]).
/// When used as a priority order, p[0] is first.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> mapping);

  static Permutation identity(int n);

  int size() const { return static_cast<int>(mapping_.size()); }
  int operator[](int position) const { return mapping_[position]; }
  const std::vector<int>& values() const { return mapping_; }
  auto begin() const { return mapping_.begin(); }
  auto end() const { return mapping_.end(); }

  /// position_of(v) = p^{-1}(v).
  std::vector<int> positions() const;

  bool operator==(const Permutation&) const = default;

 private:
  std::vector<int> mapping_;
};

/// Inverse Lehmer code. The code is written in the factorial number system
/// with digits d_{n-1}, ..., d_1 (most significant first, d_i in [0, i]);
/// each digit removes the element at that index from the ascending list of
/// values not yet used. Code 0 is the identity, n!-1 the reversal.
Permutation lehmer_decode(const BigInt& code, int n);
BigInt lehmer_encode(const Permutation& perm);

/// Compact distributed bids: student i submits a[i] and b[i]. Slots the
/// construction does not use for a given n must hold 0.
///
/// Admissible values (half-open counts, see a_range/b_range):
///   n even: b_0 < n; 0<i<n-1: a_i <= i, b_i < n-i; a_{n-1} < n.
///   n = 2k+1 additionally: a_0 <= k, b_{n-1} <= k.
struct CompactBids {
  std::vector<std::int64_t> a;
  std::vector<std::int64_t> b;

  static CompactBids zeros(int n) { return {std::vector<std::int64_t>(n, 0), std::vector<std::int64_t>(n, 0)}; }
  bool operator==(const CompactBids&) const = default;
};

/// Number of admissible values for a[student] (1 means the slot is unused).
std::int64_t a_range(int student, int n);
/// Number of admissible values for b[student] (1 means the slot is unused).
std::int64_t b_range(int student, int n);

/// Throws RangeError naming the student and bid on the first bad entry.
void validate(const CompactBids& bids, int n);

/// Position 0 is student (a_{n-1} + b_0) mod n. Position p >= 1 takes index
/// (a_{n-1-p} + b_p) mod (n-p) into the remaining students sorted in
/// descending order. For odd n = 2k+1, position k uses
/// (a_k + b_k + a_0 + b_{n-1}) mod (k+1) instead.
Permutation compact_priority_order(const CompactBids& bids, int n);

}  // namespace derand::permute
