#include "derand/permute.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "derand/error.hpp"

namespace derand::permute {

Permutation::Permutation(std::vector<int> mapping) : mapping_(std::move(mapping)) {
  const int n = size();
  std::vector<bool> seen(n, false);
  for (int p = 0; p < n; ++p) {
    const int v = mapping_[p];
    if (v < 0 || v >= n) {
      throw ValidationError("permutation entry " + std::to_string(v) + " at position " + std::to_string(p) +
                            " outside [0," + std::to_string(n) + ")");
    }
    if (seen[v]) throw ValidationError("permutation repeats value " + std::to_string(v));
    seen[v] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> m(n);
  for (int i = 0; i < n; ++i) m[i] = i;
  return Permutation(std::move(m));
}

std::vector<int> Permutation::positions() const {
  std::vector<int> pos(mapping_.size());
  for (int p = 0; p < size(); ++p) pos[mapping_[p]] = p;
  return pos;
}

Permutation lehmer_decode(const BigInt& code, int n) {
  if (n < 0) throw RangeError("negative permutation size");
  const BigInt total = factorial(n);
  if (code < 0 || code >= total) {
    throw RangeError("Lehmer code " + code.str() + " outside [0," + total.str() + ")");
  }
  std::vector<int> remaining(n);
  for (int i = 0; i < n; ++i) remaining[i] = i;
  std::vector<int> out;
  out.reserve(n);
  BigInt rest = code;
  BigInt place = n > 0 ? BigInt(total / n) : BigInt(1);  // (n-1)!
  for (int i = n - 1; i >= 0; --i) {
    const auto digit = static_cast<std::size_t>(BigInt(rest / place));
    rest %= place;
    out.push_back(remaining[digit]);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(digit));
    if (i > 0) place /= i;
  }
  return Permutation(std::move(out));
}

BigInt lehmer_encode(const Permutation& perm) {
  const int n = perm.size();
  std::vector<int> remaining(n);
  for (int i = 0; i < n; ++i) remaining[i] = i;
  BigInt code = 0;
  for (int p = 0; p < n; ++p) {
    const auto it = std::lower_bound(remaining.begin(), remaining.end(), perm[p]);
    const auto digit = it - remaining.begin();
    // Horner step in the factorial base: code = code * (n-p) + digit.
    code = code * (n - p) + digit;
    remaining.erase(it);
  }
  return code;
}

std::int64_t a_range(int student, int n) {
  if (n <= 1) return 1;
  if (student == n - 1) return n;
  if (student == 0) return n % 2 == 1 ? n / 2 + 1 : 1;
  return student + 1;
}

std::int64_t b_range(int student, int n) {
  if (n <= 1) return 1;
  if (student == 0) return n;
  if (student == n - 1) return n % 2 == 1 ? n / 2 + 1 : 1;
  return n - student;
}

void validate(const CompactBids& bids, int n) {
  if (n < 1) throw RangeError("compact ordering needs at least one student");
  if (bids.a.size() != static_cast<std::size_t>(n) || bids.b.size() != static_cast<std::size_t>(n)) {
    throw ValidationError("compact bids need " + std::to_string(n) + " a- and b-entries, got " +
                          std::to_string(bids.a.size()) + " and " + std::to_string(bids.b.size()));
  }
  for (int i = 0; i < n; ++i) {
    if (bids.a[i] < 0 || bids.a[i] >= a_range(i, n)) {
      throw RangeError("student " + std::to_string(i) + " bid a=" + std::to_string(bids.a[i]) + " outside [0," +
                       std::to_string(a_range(i, n)) + ")");
    }
    if (bids.b[i] < 0 || bids.b[i] >= b_range(i, n)) {
      throw RangeError("student " + std::to_string(i) + " bid b=" + std::to_string(bids.b[i]) + " outside [0," +
                       std::to_string(b_range(i, n)) + ")");
    }
  }
}

Permutation compact_priority_order(const CompactBids& bids, int n) {
  validate(bids, n);
  // Descending list of students not yet placed.
  std::vector<int> remaining(n);
  for (int i = 0; i < n; ++i) remaining[i] = n - 1 - i;

  std::vector<int> order;
  order.reserve(n);
  const std::int64_t first = (bids.a[n - 1] + bids.b[0]) % n;
  order.push_back(static_cast<int>(first));
  remaining.erase(std::find(remaining.begin(), remaining.end(), static_cast<int>(first)));

  const bool odd = n % 2 == 1;
  const int k = n / 2;
  for (int p = 1; p < n; ++p) {
    const std::int64_t width = n - p;
    std::int64_t index = (bids.a[n - 1 - p] + bids.b[p]) % width;
    if (odd && p == k) index = (bids.a[k] + bids.b[k] + bids.a[0] + bids.b[n - 1]) % width;
    order.push_back(remaining[index]);
    remaining.erase(remaining.begin() + index);
  }
  return Permutation(std::move(order));
}

}  // namespace derand::permute
