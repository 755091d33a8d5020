#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "amrkit/rng.hpp"

namespace amrkit {
namespace {

TEST(Rng, Fnv1aKnownValues) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ull);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cull);
}

TEST(Rng, Mix64KnownValue) {
  // first SplitMix64 outputs for states 0 and 1
  EXPECT_EQ(mix64(0), 0xe220a8397b1dcdafull);
  EXPECT_EQ(mix64(1), 0x910a2dec89025cc1ull);
}

TEST(Rng, StreamsAreIndependentAndStable) {
  EXPECT_EQ(stream_seed(7, "corpus/split"), mix64(7 ^ fnv1a64("corpus/split")));
  Rng a(7, "x"), b(7, "x"), c(7, "y");
  EXPECT_EQ(a.next(), b.next());
  EXPECT_NE(a.next(), c.next());
}

TEST(Rng, BelowStaysInRangeAndCoversIt) {
  Rng rng(1);
  std::vector<int> seen(7, 0);
  for (int k = 0; k < 7000; ++k) {
    auto v = rng.below(7);
    ASSERT_LT(v, 7u);
    ++seen[v];
  }
  for (int count : seen) EXPECT_GT(count, 800);
}

TEST(Rng, ShuffleIsPermutation) {
  std::vector<int> v(100);
  std::iota(v.begin(), v.end(), 0);
  Rng rng(3);
  rng.shuffle(std::span<int>(v));
  auto sorted = v;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 100; ++i) EXPECT_EQ(sorted[i], i);
  EXPECT_NE(v, sorted);
}

}  // namespace
}  // namespace amrkit
