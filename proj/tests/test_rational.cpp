#include <gtest/gtest.h>

#include "heis/error.hpp"
#include "heis/rational.hpp"

using namespace heis;

TEST(Rational, ParsesIntegersFractionsAndDecimals) {
  EXPECT_EQ(parse_rational("3"), Rational(3));
  EXPECT_EQ(parse_rational("-7/2"), Rational(-7, 2));
  EXPECT_EQ(parse_rational("0.125"), Rational(1, 8));
  EXPECT_EQ(parse_rational("1e-3"), Rational(1, 1000));
  EXPECT_EQ(parse_rational(" 4/6 "), Rational(2, 3));
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("abc"), Error);
  EXPECT_EQ(to_string(Rational(-7, 2)), "-7/2");
}

TEST(Rational, RoundingHelpers) {
  EXPECT_EQ(floor_to_integer(Rational(-7, 2)), -4);
  EXPECT_EQ(ceil_to_integer(Rational(-7, 2)), -3);
  EXPECT_EQ(round_half_toward_zero(Rational(5, 2)), 2);
  EXPECT_EQ(round_half_toward_zero(Rational(-5, 2)), -2);
  EXPECT_EQ(round_half_toward_zero(Rational(7, 5)), 1);
  EXPECT_EQ(round_half_toward_zero(Rational(-8, 5)), -2);
}

TEST(Rational, IntegerSquareRootAgainstScan) {
  for (Integer num = 0; num <= 400; num += 7) {
    for (Integer den = 1; den <= 9; ++den) {
      const Rational x(num, den);
      Integer n = 0;
      while (Rational((n + 1) * (n + 1)) <= x) ++n;
      EXPECT_EQ(isqrt_floor(x), n);
    }
  }
}

TEST(Rational, UpperRootsAreTight) {
  for (const Rational x : {Rational(0), Rational(1, 2), Rational(5, 4), Rational(2), Rational(1000, 7)}) {
    const Rational ulp(1, Integer(1) << 40);
    const Rational r = fourth_root_upper(x);
    EXPECT_GE(r * r * r * r, x);
    if (r > 0) EXPECT_LT((r - ulp) * (r - ulp) * (r - ulp) * (r - ulp), x);
    const Rational s = sqrt_upper(x);
    const Rational sulp(1, Integer(1) << 20);
    EXPECT_GE(s * s, x);
    if (s > 0) EXPECT_LT((s - sulp) * (s - sulp), x);
  }
  EXPECT_NEAR(to_double(fourth_root_upper(Rational(1, 2))), 0.8408964152537145, 1e-11);
}
