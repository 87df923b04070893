#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "heis/group.hpp"
#include "heis/subgroups.hpp"

namespace heis {

/// delta_r (v, u) = (r v, r^2 u); r must be positive.
template <typename Scalar>
BasicGroupElement<Scalar> dilate(const Scalar& r, const BasicGroupElement<Scalar>& g) {
  if (!(r > Scalar(0))) throw Error(ErrorKind::InvalidArgument, "dilation factor must be positive");
  return {g.v() * r, g.u() * r * r};
}

/// |v|^4 + u^2, the fourth power of the Cygan-Koranyi norm.
template <typename Scalar>
Scalar gauge4(const BasicGroupElement<Scalar>& g) {
  const Scalar n2 = g.v().squaredNorm();
  return n2 * n2 + g.u() * g.u();
}

/// gauge4(g h^-1): fourth power of the right-invariant distance.
template <typename Scalar>
Scalar dist4(const BasicGroupElement<Scalar>& g, const BasicGroupElement<Scalar>& h) {
  return gauge4(g * inv(h));
}

/// Exact fourth power of a Cygan-Koranyi length. Thresholds are compared at
/// this level; root() is for display only.
struct GaugeFourth {
  Rational value;
  double root() const;
  friend bool operator==(const GaugeFourth& a, const GaugeFourth& b) { return a.value == b.value; }
  friend std::strong_ordering operator<=>(const GaugeFourth& a, const GaugeFourth& b) {
    if (a.value < b.value) return std::strong_ordering::less;
    return a.value == b.value ? std::strong_ordering::equal : std::strong_ordering::greater;
  }
};

GaugeFourth ck_gauge4(const GroupElement& g);
GaugeFourth ck_gauge4(const LatticeElement& g);
GaugeFourth ck_dist4(const GroupElement& g, const GroupElement& h);
double ck_norm(const GroupElement& g);
double ck_norm(const GroupElementd& g);

/// Exact squared Euclidean distance from pi(g) to V, which equals the squared
/// Cygan-Koranyi distance from g to V x R.
struct VerticalDistance {
  Rational squared;
  double value() const;
};

VerticalDistance dist_to_vertical(const GroupElement& g, const VerticalGroup& G);

struct CenterInterval {
  Rational lo;
  Rational hi;
};

/// Lattice-relevant thickening of a vertical group: points whose projection
/// lies within `width` of V and within `extent` of V-perp, optionally with the
/// center coordinate boxed.
struct ThickenedSlab {
  VerticalGroup group;
  Rational width;
  std::optional<Rational> extent;  // nullopt: unbounded along V
  std::optional<CenterInterval> center;
};

bool slab_member(const GroupElement& g, const ThickenedSlab& slab);
bool slab_member(const LatticeElement& g, const ThickenedSlab& slab);

/// All lattice points of the slab, sorted by (v, u2). Needs finite extent and center box.
std::vector<LatticeElement> enumerate_slab(const ThickenedSlab& slab);

/// {(v, u) in H : |v| <= t, -n <= u <= n}
struct IntervalSet {
  Rational t;
  Integer n = 0;
  std::vector<LatticeElement> elements;
};

IntervalSet interval_set(int dim, Integer n, const Rational& t);
/// {h z^k : h in A, |k| <= m}, sorted and deduplicated.
std::vector<LatticeElement> interval_product(const IntervalSet& a, Integer m);

/// Coordinatewise rounding of v (halves toward zero), then the admissible u2 nearest in d_CK.
LatticeElement lattice_approximate(const GroupElement& g);

/// Upper bound on sup_g d_CK(g, H), with the grid evidence gathered for it.
struct LambdaBound {
  int dim = 1;
  Rational value;   // rational upper bound on lambda
  Rational gauge4;  // analytic bound on lambda^4
  std::string method;
  Integer grid_denominator = 0;
  std::size_t grid_points = 0;
  Rational worst_grid_gauge4;   // max over grid of dist4(g, lattice_approximate(g))
  double lower_estimate = 0.0;  // max over grid of min over nearby lattice points
};

/// Analytic lambda^4 = (D^2 + 1) / 4: |v - v~|^4 <= (D/2)^2 and the center gap is <= 1/2.
Rational lambda_gauge4(int dim);
/// Rational upper bound on lambda, cached per dimension.
const Rational& lambda_upper(int dim);
/// Validates the analytic bound on a grid of spacing 1/grid_denominator over
/// the fundamental domain [-1/2, 1/2]^{2D+1}.
LambdaBound compute_lambda_bound(int dim, Integer grid_denominator);

/// A point of <gens> near g, built from integer powers of the generators (and a
/// commutator power in the non-isotropic case), with the constant c bounding
/// the distance.
struct SpanApproximation {
  GroupElement element;
  std::vector<Integer> exponents;  // one per generator, product taken in order
  std::optional<std::pair<std::size_t, std::size_t>> commutator_pair;
  Integer commutator_power = 0;
  GaugeFourth distance4;
  GaugeFourth bound4;  // c^4
};

SpanApproximation span_approximate(const GroupElement& g, const std::vector<GroupElement>& gens);

}  // namespace heis
