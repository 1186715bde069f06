#include <algorithm>
#include <map>
#include <numeric>

#include <gtest/gtest.h>

#include "derand/error.hpp"
#include "derand/permute.hpp"

using namespace derand;
using namespace derand::permute;

TEST(Permutation, ValidatesBijection) {
  EXPECT_THROW(Permutation({0, 0, 1}), ValidationError);
  EXPECT_THROW(Permutation({0, 3, 1}), ValidationError);
  const Permutation p({2, 0, 1});
  EXPECT_EQ(p.positions(), (std::vector<int>{1, 2, 0}));
}

TEST(Lehmer, DecodeExamples) {
  EXPECT_EQ(lehmer_decode(0, 3).values(), (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(lehmer_decode(5, 3).values(), (std::vector<int>{2, 1, 0}));
  EXPECT_EQ(lehmer_decode(3, 3).values(), (std::vector<int>{1, 2, 0}));
  EXPECT_THROW(lehmer_decode(6, 3), RangeError);
  EXPECT_THROW(lehmer_decode(-1, 3), RangeError);
}

TEST(Lehmer, EncodeExamples) {
  EXPECT_EQ(lehmer_encode(Permutation({0, 1, 2})), 0);
  EXPECT_EQ(lehmer_encode(Permutation({2, 1, 0})), 5);
  EXPECT_EQ(lehmer_encode(Permutation({1, 2, 0})), 3);
}

// Oracle: with digits most significant first the code is the rank in
// lexicographic order.
TEST(Lehmer, CodeIsLexicographicRank) {
  for (int n = 1; n <= 7; ++n) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::int64_t rank = 0;
    do {
      EXPECT_EQ(lehmer_decode(rank, n).values(), perm);
      EXPECT_EQ(lehmer_encode(Permutation(perm)), rank);
      ++rank;
    } while (std::next_permutation(perm.begin(), perm.end()));
    EXPECT_EQ(BigInt(rank), factorial(n));
  }
}

TEST(Lehmer, LargeCodesRoundTrip) {
  const int n = 30;
  const BigInt top = factorial(n) - 1;
  std::vector<int> rev(n);
  std::iota(rev.rbegin(), rev.rend(), 0);
  EXPECT_EQ(lehmer_decode(top, n).values(), rev);
  for (const BigInt& c : std::vector<BigInt>{0, 1, top / 3, top / 7 * 5, top}) {
    EXPECT_EQ(lehmer_encode(lehmer_decode(c, n)), c);
  }
}

TEST(Compact, Ranges) {
  // Odd n = 2k+1: the middle student's a and the last student's b carry
  // the k+1 option correction.
  EXPECT_EQ(a_range(4, 5), 5);
  EXPECT_EQ(a_range(0, 5), 3);
  EXPECT_EQ(b_range(0, 5), 5);
  EXPECT_EQ(b_range(4, 5), 3);
  EXPECT_EQ(a_range(0, 4), 1);
  EXPECT_EQ(b_range(3, 4), 1);
  EXPECT_EQ(b_range(1, 4), 3);
  EXPECT_EQ(a_range(2, 4), 3);
}

TEST(Compact, Examples) {
  CompactBids two = CompactBids::zeros(2);
  two.b[0] = 1;
  two.a[1] = 1;
  EXPECT_EQ(compact_priority_order(two, 2).values(), (std::vector<int>{0, 1}));
  EXPECT_EQ(compact_priority_order(CompactBids::zeros(3), 3).values(), (std::vector<int>{0, 2, 1}));
  EXPECT_EQ(compact_priority_order(CompactBids::zeros(4), 4).values(), (std::vector<int>{0, 3, 2, 1}));
}

TEST(Compact, OutOfRangeBidNamesStudent) {
  CompactBids bids = CompactBids::zeros(4);
  bids.b[1] = 3;
  try {
    compact_priority_order(bids, 4);
    FAIL() << "expected RangeError";
  } catch (const RangeError& e) {
    EXPECT_NE(std::string(e.what()).find("student 1"), std::string::npos) << e.what();
  }
}

// Exhaustive: every bid vector is enumerated and every permutation must be
// produced equally often.
TEST(Compact, UniformOverAllBidVectors) {
  for (int n = 1; n <= 6; ++n) {
    std::vector<std::int64_t> ranges;
    for (int i = 0; i < n; ++i) ranges.push_back(a_range(i, n));
    for (int i = 0; i < n; ++i) ranges.push_back(b_range(i, n));
    std::map<std::vector<int>, long> counts;
    std::vector<std::int64_t> idx(2 * n, 0);
    long total = 0;
    for (;;) {
      CompactBids bids;
      bids.a.assign(idx.begin(), idx.begin() + n);
      bids.b.assign(idx.begin() + n, idx.end());
      ++counts[compact_priority_order(bids, n).values()];
      ++total;
      std::size_t k = 0;
      while (k < idx.size() && ++idx[k] == ranges[k]) idx[k++] = 0;
      if (k == idx.size()) break;
    }
    ASSERT_EQ(BigInt(counts.size()), factorial(n)) << "n=" << n;
    for (const auto& [perm, c] : counts) EXPECT_EQ(c * static_cast<long>(counts.size()), total) << "n=" << n;
  }
}

// Fixing everyone else, a student's own (a, b) choices only permute which
// outcome it gets: the position-0 choice is a bijection of its own bid.
TEST(Compact, FirstPositionIsAShiftOfOwnBid) {
  const int n = 5;
  CompactBids bids = CompactBids::zeros(n);
  bids.a[n - 1] = 3;
  std::vector<int> firsts;
  for (int b = 0; b < n; ++b) {
    bids.b[0] = b;
    firsts.push_back(compact_priority_order(bids, n)[0]);
  }
  std::sort(firsts.begin(), firsts.end());
  EXPECT_EQ(firsts, (std::vector<int>{0, 1, 2, 3, 4}));
}
