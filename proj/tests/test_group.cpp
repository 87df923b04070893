#include <gtest/gtest.h>

#include "heis/group.hpp"
#include "heis/verify.hpp"

using namespace heis;

TEST(Group, GeneratorsAndCommutator) {
  const LatticeElement x = LatticeElement::x(1, 1), y = LatticeElement::y(1, 1), z = LatticeElement::z(1);
  EXPECT_EQ(x * y, LatticeElement(IntVec{{1, 1}}, 1));
  EXPECT_EQ(y * x, LatticeElement(IntVec{{1, 1}}, -1));
  EXPECT_EQ(commutator(x, y), z);
  EXPECT_EQ(z.u(), Rational(1));
  EXPECT_EQ(x * inv(x), LatticeElement::identity(1));
}

TEST(Group, ParityIsEnforced) {
  EXPECT_THROW(LatticeElement(IntVec{{1, 1}}, 0), Error);
  EXPECT_NO_THROW(LatticeElement(IntVec{{1, 2}}, 4));
  EXPECT_FALSE(LatticeElement::from_group(GroupElement(RatVec{{Rational(1), Rational(1)}}, Rational(0))));
  EXPECT_FALSE(LatticeElement::from_group(GroupElement(RatVec{{Rational(1, 2), Rational(0)}}, Rational(0))));
}

TEST(Group, LatticeAgreesWithContinuousLaw) {
  Sampler rng(11);
  for (int i = 0; i < 2000; ++i) {
    const int d = 1 + i % 3;
    const LatticeElement g = rng.lattice(d, 6), h = rng.lattice(d, 6);
    EXPECT_EQ((g * h).to_group(), g.to_group() * h.to_group());
    const Integer n = rng.integer(-12, 12);
    EXPECT_EQ(pow(g, n).to_group(), iterated_power(g.to_group(), n));
  }
}

TEST(Group, NormalFormRoundTrip) {
  Sampler rng(3);
  for (int i = 0; i < 1000; ++i) {
    const int d = 1 + i % 2;
    const LatticeElement g = rng.lattice(d, 8);
    const NormalForm nf = normal_form(g);
    EXPECT_EQ(eval_normal_form(nf), g);
    EXPECT_EQ(word_eval(to_word(nf), d), g);
  }
  const NormalForm nf = normal_form(LatticeElement::y(1, 1) * LatticeElement::x(1, 1));
  EXPECT_EQ(nf.a[0], 1);
  EXPECT_EQ(nf.b[0], 1);
  EXPECT_EQ(nf.c, -1);
}

TEST(Group, WordParsing) {
  const Word w = parse_word("x1^2 y1^-1 z");
  ASSERT_EQ(w.size(), 3u);
  EXPECT_EQ(w[0].exponent, 2);
  EXPECT_EQ(w[1].exponent, -1);
  EXPECT_EQ(word_eval(parse_word(to_string(w)), 1), word_eval(w, 1));
  EXPECT_EQ(word_eval(parse_word("x y x^-1 y^-1"), 1), LatticeElement::z(1));
  EXPECT_EQ(word_eval({}, 2), LatticeElement::identity(2));
  EXPECT_THROW(word_eval(parse_word("x3"), 1), Error);
  EXPECT_THROW(parse_word("w"), Error);
}
