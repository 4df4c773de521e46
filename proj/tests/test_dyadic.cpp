#include <gtest/gtest.h>

#include <limits>

#include "fsparse/dyadic.hpp"
#include "fsparse/error.hpp"
#include "fsparse/rng.hpp"

using fsparse::Dyadic;

namespace {

// Exact value num / 2^den compared by cross-multiplication in 128 bits.
struct Frac {
  __int128 num;
  int den;
};

bool same_value(const Dyadic& d, Frac f) {
  const int common = std::max(d.log2_den(), f.den);
  return static_cast<__int128>(d.num()) << (common - d.log2_den()) == f.num << (common - f.den);
}

}  // namespace

TEST(Dyadic, NormalForm) {
  EXPECT_EQ(Dyadic(4, 3).num(), 1);
  EXPECT_EQ(Dyadic(4, 3).log2_den(), 1);
  EXPECT_EQ(Dyadic(0, 7).log2_den(), 0);
  EXPECT_EQ(Dyadic(-6, 2).to_string(), "-3/2");
  EXPECT_EQ(Dyadic(8, 2).to_string(), "2");
  EXPECT_EQ(Dyadic(1, 2), Dyadic(2, 3));
}

TEST(Dyadic, ArithmeticMatchesCrossMultiplication) {
  fsparse::Rng rng(31);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto an = static_cast<std::int64_t>(rng.below(2001)) - 1000;
    const auto bn = static_cast<std::int64_t>(rng.below(2001)) - 1000;
    const int ad = static_cast<int>(rng.below(20)), bd = static_cast<int>(rng.below(20));
    const Dyadic a(an, ad), b(bn, bd);
    const int common = std::max(ad, bd);
    const __int128 as = static_cast<__int128>(an) << (common - ad);
    const __int128 bs = static_cast<__int128>(bn) << (common - bd);
    EXPECT_TRUE(same_value(a + b, {as + bs, common}));
    EXPECT_TRUE(same_value(a - b, {as - bs, common}));
    EXPECT_TRUE(same_value(a * b, {static_cast<__int128>(an) * bn, ad + bd}));
    EXPECT_EQ(a < b, as < bs);
    EXPECT_EQ(a == b, as == bs);
  }
}

TEST(Dyadic, ScalingAndMultiples) {
  EXPECT_EQ(Dyadic(3).scaled(-2), Dyadic(3, 2));
  EXPECT_EQ(Dyadic(3, 2).scaled(2), Dyadic(3));
  EXPECT_TRUE(Dyadic(3, 2).is_multiple_of_pow2(-2));
  EXPECT_FALSE(Dyadic(3, 2).is_multiple_of_pow2(-1));
  EXPECT_TRUE(Dyadic(4).is_multiple_of_pow2(2));
  EXPECT_FALSE(Dyadic(4).is_multiple_of_pow2(3));
  EXPECT_TRUE(Dyadic(0).is_multiple_of_pow2(10));
}

TEST(Dyadic, RoundToGrid) {
  EXPECT_EQ(Dyadic::round_to_grid(0.26, -1), Dyadic(1, 1));
  EXPECT_EQ(Dyadic::round_to_grid(0.24, -1), Dyadic(0));
  EXPECT_EQ(Dyadic::round_to_grid(0.25, -1), Dyadic(1, 1));
  EXPECT_EQ(Dyadic::round_to_grid(-0.25, -1), Dyadic(-1, 1));
  EXPECT_EQ(Dyadic::round_to_grid(-0.74, -1), Dyadic(-1, 1));
  EXPECT_EQ(Dyadic::round_to_grid(0.9, 0), Dyadic(1));
  EXPECT_EQ(Dyadic::round_to_grid(0.3, -2), Dyadic(1, 2));
}

TEST(Dyadic, OverflowIsReported) {
  const Dyadic big(std::numeric_limits<std::int64_t>::max());
  EXPECT_THROW(big + Dyadic(1), fsparse::Error);
  EXPECT_THROW(big * Dyadic(2), fsparse::Error);
}

TEST(Dyadic, DoubleConversion) {
  EXPECT_DOUBLE_EQ(Dyadic(-3, 3).to_double(), -0.375);
  EXPECT_DOUBLE_EQ(Dyadic(5).to_double(), 5.0);
}
