#include <gtest/gtest.h>

#include <cmath>

#include "heis/geometry.hpp"
#include "heis/verify.hpp"

using namespace heis;

namespace {

GroupElement element(std::initializer_list<Rational> v, Rational u) {
  RatVec x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (const Rational& c : v) x[i++] = c;
  return {x, u};
}

}  // namespace

TEST(Geometry, NormOfSimpleElements) {
  EXPECT_DOUBLE_EQ(ck_norm(LatticeElement::z(1).to_group()), 1.0);
  EXPECT_DOUBLE_EQ(ck_norm(LatticeElement::x(1, 1).to_group()), 1.0);
  EXPECT_EQ(ck_gauge4(element({Rational(3), Rational(4)}, Rational(0))).value, Rational(625));
  EXPECT_EQ(ck_gauge4(LatticeElement::x(1, 1) * LatticeElement::y(1, 1)).value, Rational(17, 4));
}

TEST(Geometry, DilationScalesTheGauge) {
  const GroupElement g = element({Rational(1, 3), Rational(-2)}, Rational(5, 7));
  EXPECT_EQ(ck_gauge4(dilate(Rational(3), g)).value, Rational(81) * ck_gauge4(g).value);
  EXPECT_THROW(dilate(Rational(0), g), Error);
}

TEST(Geometry, VerticalDistanceClosedForm) {
  const VerticalGroup axis = VerticalGroup::axis(1);
  EXPECT_EQ(dist_to_vertical(element({Rational(3), Rational(4)}, Rational(9)), axis).squared, Rational(25));
  const VerticalGroup diag = VerticalGroup::from_integer_basis(1, {IntVec{{1, 1}}});
  EXPECT_EQ(dist_to_vertical(element({Rational(1), Rational(0)}, Rational(0)), diag).squared, Rational(1, 2));
  Sampler rng(4);
  for (int i = 0; i < 10; ++i) {
    const VerticalGroup G = rng.vertical(2, 1 + i % 3);
    const GroupElement g = rng.group(2);
    EXPECT_NEAR(dist_to_vertical(g, G).value(), sampled_vertical_distance(g, G, 100 + i), 1e-6);
  }
}

TEST(Geometry, EnumerationMatchesBoxScan) {
  Sampler rng(21);
  for (int i = 0; i < 30; ++i) {
    const int d = 1 + i % 2;
    const VerticalGroup G = rng.vertical(d, i % (2 * d));
    const ThickenedSlab slab{G, rng.positive_rational(3, 2), rng.positive_rational(3, 2),
                             CenterInterval{Rational(-rng.integer(0, 2)), Rational(rng.integer(0, 2))}};
    const Integer box = isqrt_floor(*slab.extent * *slab.extent + slab.width * slab.width) + 1;
    EXPECT_EQ(enumerate_slab(slab), box_scan_slab(slab, box, 5)) << "case " << i;
  }
  const ThickenedSlab unbounded{VerticalGroup::axis(1), Rational(1), std::nullopt, std::nullopt};
  EXPECT_THROW(enumerate_slab(unbounded), Error);
}

TEST(Geometry, LatticeApproximateRoundsThenPicksTheBestCenter) {
  Sampler rng(8);
  for (int i = 0; i < 300; ++i) {
    const GroupElement g = rng.group(1);
    const LatticeElement h = lattice_approximate(g);
    const Rational got = ck_dist4(g, h.to_group()).value;
    EXPECT_LE(got, lambda_gauge4(1));
    for (Eigen::Index k = 0; k < 2; ++k) EXPECT_LE(abs(g.v()[k] - Rational(h.v()[k])), Rational(1, 2));
    for (Integer u2 = h.u2() - 6; u2 <= h.u2() + 6; u2 += 2) {
      EXPECT_LE(got, ck_dist4(g, LatticeElement(h.v(), u2).to_group()).value);
    }
  }
  EXPECT_EQ(lattice_approximate(element({Rational(1, 2), Rational(-1, 2)}, Rational(0))).v(), IntVec::Zero(2));
}

TEST(Geometry, LambdaBound) {
  const Rational& l = lambda_upper(1);
  EXPECT_GE(l * l * l * l, lambda_gauge4(1));
  EXPECT_GE(l * l, Rational(1, 2));
  EXPECT_LE(to_double(l), std::pow(2.0, -0.25) + 1e-9);
  EXPECT_EQ(lambda_gauge4(2), Rational(5, 4));
}

TEST(Geometry, IntervalSetsMultiply) {
  for (Integer n = 0; n <= 3; ++n) {
    for (Integer m = 0; m <= 3; ++m) {
      EXPECT_EQ(interval_product(interval_set(1, n, Rational(1)), m), interval_set(1, n + m, Rational(1)).elements);
    }
  }
}

TEST(Geometry, SpanApproximationRespectsItsBound) {
  Sampler rng(17);
  const std::vector<GroupElement> plane{LatticeElement::x(1, 1).to_group(), LatticeElement::y(1, 1).to_group()};
  const std::vector<GroupElement> line{element({Rational(1), Rational(1)}, Rational(0))};
  for (int i = 0; i < 200; ++i) {
    const GroupElement g = element({rng.rational(), rng.rational()}, rng.rational());
    const SpanApproximation a = span_approximate(g, plane);
    EXPECT_LE(a.distance4, a.bound4);
    const Rational s = rng.rational();
    const GroupElement on_line = element({s, s}, Rational(0));
    const SpanApproximation b = span_approximate(on_line, line);
    EXPECT_LE(b.distance4, b.bound4);
  }
  EXPECT_THROW(span_approximate(element({Rational(1), Rational(0)}, Rational(0)), line), Error);
}

TEST(Geometry, ZeroHeightIntervalMissesHalfIntegerCenters) {
  const IntervalSet zero = interval_set(1, 0, Rational(2));
  const std::vector<LatticeElement> product = interval_product(zero, 1);
  const std::vector<LatticeElement> full = interval_set(1, 1, Rational(2)).elements;
  const LatticeElement half(IntVec{{1, 1}}, 1);
  EXPECT_TRUE(std::binary_search(full.begin(), full.end(), half));
  EXPECT_FALSE(std::binary_search(product.begin(), product.end(), half));
  EXPECT_EQ(interval_product(interval_set(1, 0, Rational(1)), 1), interval_set(1, 1, Rational(1)).elements);
}

TEST(Geometry, DistanceToVerticalGroupIsLipschitz) {
  Sampler rng(31);
  for (int i = 0; i < 500; ++i) {
    const VerticalGroup G = rng.vertical(1, 1);
    const GroupElement g = rng.group(1), h = rng.group(1);
    const double s = std::pow(to_double(ck_dist4(h, g).value), 0.25);
    EXPECT_LE(dist_to_vertical(h, G).value(), dist_to_vertical(g, G).value() + s + 1e-9);
  }
}
