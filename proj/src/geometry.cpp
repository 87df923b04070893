#include "heis/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace heis {

double GaugeFourth::root() const { return std::pow(to_double(value), 0.25); }

GaugeFourth ck_gauge4(const GroupElement& g) { return {gauge4(g)}; }
GaugeFourth ck_gauge4(const LatticeElement& g) { return {gauge4(g.to_group())}; }
GaugeFourth ck_dist4(const GroupElement& g, const GroupElement& h) { return {dist4(g, h)}; }
double ck_norm(const GroupElement& g) { return ck_gauge4(g).root(); }
double ck_norm(const GroupElementd& g) { return std::pow(gauge4(g), 0.25); }

double VerticalDistance::value() const { return std::sqrt(to_double(squared)); }

VerticalDistance dist_to_vertical(const GroupElement& g, const VerticalGroup& G) {
  require_same_dim(g.dim(), G.dim());
  return {G.off_squared(g.v())};
}

namespace {

bool projection_member(const RatVec& v, const ThickenedSlab& slab) {
  if (slab.group.off_squared(v) > slab.width * slab.width) return false;
  if (slab.extent && slab.group.along_squared(v) > *slab.extent * *slab.extent) return false;
  return true;
}

bool center_member(const Rational& u, const ThickenedSlab& slab) {
  return !slab.center || (slab.center->lo <= u && u <= slab.center->hi);
}

void check_slab(const ThickenedSlab& slab) {
  if (slab.width < 0) throw Error(ErrorKind::InvalidArgument, "slab width must be >= 0");
  if (slab.extent && *slab.extent < 0) throw Error(ErrorKind::InvalidArgument, "slab extent must be >= 0");
}

/// Visits every integer vector in [-bound, bound]^n.
template <typename F>
void for_each_box_point(Eigen::Index n, Integer bound, F&& f) {
  IntVec v = IntVec::Constant(n, -bound);
  while (true) {
    f(v);
    Eigen::Index i = 0;
    while (i < n && v[i] == bound) v[i++] = -bound;
    if (i == n) return;
    ++v[i];
  }
}

/// u2 values with the parity of sum p_i q_i in [2 lo, 2 hi].
std::vector<Integer> admissible_u2(const IntVec& v, const CenterInterval& box) {
  std::vector<Integer> out;
  Integer lo = ceil_to_integer(box.lo * 2);
  Integer hi = floor_to_integer(box.hi * 2);
  const Integer parity = ((parity_sum(v) % 2) + 2) % 2;
  if (((lo % 2) + 2) % 2 != parity) ++lo;
  for (Integer u2 = lo; u2 <= hi; u2 += 2) out.push_back(u2);
  return out;
}

}  // namespace

bool slab_member(const GroupElement& g, const ThickenedSlab& slab) {
  require_same_dim(g.dim(), slab.group.dim());
  return projection_member(g.v(), slab) && center_member(g.u(), slab);
}

bool slab_member(const LatticeElement& g, const ThickenedSlab& slab) {
  require_same_dim(g.dim(), slab.group.dim());
  return projection_member(to_rational(g.v()), slab) && center_member(g.u(), slab);
}

std::vector<LatticeElement> enumerate_slab(const ThickenedSlab& slab) {
  check_slab(slab);
  if (!slab.extent || !slab.center) {
    throw Error(ErrorKind::Unbounded, "enumeration needs a finite extent and a center box");
  }
  const int d = slab.group.dim();
  // |v|^2 = |proj_V v|^2 + dist(v, V)^2 <= extent^2 + width^2
  const Integer bound = isqrt_floor(*slab.extent * *slab.extent + slab.width * slab.width);
  std::vector<LatticeElement> out;
  for_each_box_point(2 * d, bound, [&](const IntVec& v) {
    if (!projection_member(to_rational(v), slab)) return;
    for (Integer u2 : admissible_u2(v, *slab.center)) out.emplace_back(v, u2);
  });
  std::sort(out.begin(), out.end());
  return out;
}

IntervalSet interval_set(int dim, Integer n, const Rational& t) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "interval index n must be >= 0");
  ThickenedSlab slab{VerticalGroup::axis(dim), t, Rational(0), CenterInterval{Rational(-n), Rational(n)}};
  return {t, n, enumerate_slab(slab)};
}

std::vector<LatticeElement> interval_product(const IntervalSet& a, Integer m) {
  if (m < 0) throw Error(ErrorKind::InvalidArgument, "interval index m must be >= 0");
  std::vector<LatticeElement> out;
  for (const LatticeElement& h : a.elements) {
    const LatticeElement z = LatticeElement::z(h.dim());
    for (Integer k = -m; k <= m; ++k) out.push_back(h * pow(z, k));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

LatticeElement lattice_approximate(const GroupElement& g) {
  IntVec w(g.v().size());
  for (Eigen::Index i = 0; i < w.size(); ++i) w[i] = round_half_toward_zero(g.v()[i]);
  // The center of g h^-1 vanishes when u_h = u - omega(v, w) / 2.
  const Rational target2 = g.u() * 2 - omega(g.v(), to_rational(w));
  const Integer parity = ((parity_sum(w) % 2) + 2) % 2;
  Integer below = floor_to_integer(target2);
  if (((below % 2) + 2) % 2 != parity) --below;
  const Integer above = below + 2;
  const Rational gap_below = target2 - Rational(below);
  const Rational gap_above = Rational(above) - target2;
  Integer u2 = below;
  if (gap_above < gap_below || (gap_above == gap_below && std::abs(above) < std::abs(below))) u2 = above;
  return {std::move(w), u2};
}

Rational lambda_gauge4(int dim) {
  if (dim < 1) throw Error(ErrorKind::InvalidArgument, "dimension D must be >= 1");
  return Rational(Integer(dim) * dim + 1, 4);
}

const Rational& lambda_upper(int dim) {
  static std::mutex mutex;
  static std::map<int, Rational> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(dim);
  if (it == cache.end()) it = cache.emplace(dim, fourth_root_upper(lambda_gauge4(dim))).first;
  return it->second;
}

LambdaBound compute_lambda_bound(int dim, Integer grid_denominator) {
  if (grid_denominator < 1) throw Error(ErrorKind::InvalidArgument, "grid denominator must be >= 1");
  LambdaBound out;
  out.dim = dim;
  out.gauge4 = lambda_gauge4(dim);
  out.value = lambda_upper(dim);
  out.grid_denominator = grid_denominator;
  out.method = "analytic (D^2+1)/4 bound on lambda^4, validated on a grid of spacing 1/" +
               std::to_string(grid_denominator) + " over [-1/2,1/2]^" + std::to_string(2 * dim + 1);

  const Eigen::Index n = 2 * dim + 1;
  Rational worst(0);
  double lower = 0.0;
  std::size_t points = 0;
  // grid index k in [0, den] stands for -1/2 + k / den
  IntVec idx = IntVec::Zero(n);
  const Rational step(1, grid_denominator);
  while (true) {
    RatVec x(n);
    for (Eigen::Index i = 0; i < n; ++i) x[i] = Rational(idx[i]) * step - Rational(1, 2);
    const GroupElement g = as_element(x);
    const LatticeElement h = lattice_approximate(g);
    worst = std::max(worst, dist4(g, h.to_group()));

    // Floating estimate of d(g, H): best lattice point among the 3^{2D} roundings.
    const GroupElementd gd = g.cast<double>();
    double best = std::numeric_limits<double>::infinity();
    IntVec off = IntVec::Constant(2 * dim, -1);
    while (true) {
      Vec<double> w = h.v().cast<double>() + off.cast<double>();
      IntVec wi = h.v() + off;
      const double t2 = 2.0 * gd.u() - omega(gd.v(), w);
      const Integer parity = ((parity_sum(wi) % 2) + 2) % 2;
      double below = std::floor(t2);
      if (((static_cast<Integer>(below) % 2) + 2) % 2 != parity) below -= 1.0;
      const double gap = std::min(t2 - below, below + 2.0 - t2) / 2.0;
      const double e2 = (gd.v() - w).squaredNorm();
      best = std::min(best, e2 * e2 + gap * gap);
      Eigen::Index i = 0;
      while (i < off.size() && off[i] == 1) off[i++] = -1;
      if (i == off.size()) break;
      ++off[i];
    }
    lower = std::max(lower, best);
    ++points;

    Eigen::Index i = 0;
    while (i < n && idx[i] == grid_denominator) idx[i++] = 0;
    if (i == n) break;
    ++idx[i];
  }
  out.grid_points = points;
  out.worst_grid_gauge4 = worst;
  out.lower_estimate = std::pow(lower, 0.25);
  return out;
}

SpanApproximation span_approximate(const GroupElement& g, const std::vector<GroupElement>& gens) {
  if (gens.empty()) throw Error(ErrorKind::InvalidArgument, "span_approximate needs generators");
  const int d = g.dim();
  for (const GroupElement& h : gens) require_same_dim(h.dim(), d);

  std::optional<std::pair<std::size_t, std::size_t>> pair;
  for (std::size_t i = 0; i < gens.size() && !pair; ++i) {
    for (std::size_t j = i + 1; j < gens.size() && !pair; ++j) {
      const Rational w = omega(gens[i].v(), gens[j].v());
      if (w > 0) pair = std::make_pair(i, j);
      if (w < 0) pair = std::make_pair(j, i);
    }
  }

  // Greedy choice of a basis among the generators (full vectors when isotropic,
  // projections otherwise, since the center is then supplied by a commutator).
  auto key = [&](const GroupElement& h) -> RatVec { return pair ? RatVec(h.v()) : as_vector(h); };
  std::vector<std::size_t> chosen;
  std::vector<RatVec> rows;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    std::vector<RatVec> trial = rows;
    trial.push_back(key(gens[i]));
    if (rref(stack_rows(trial, trial.back().size())).rank() == static_cast<Eigen::Index>(trial.size())) {
      rows = std::move(trial);
      chosen.push_back(i);
    }
  }
  const RatVec target = key(g);
  auto coeffs = solve_in_row_space(stack_rows(rows, target.size()), target);
  if (!coeffs) throw Error(ErrorKind::OutOfSpan, "element is outside Span(gens)");

  SpanApproximation out{GroupElement(d), std::vector<Integer>(gens.size(), 0), pair, 0, {}, {}};
  for (std::size_t c = 0; c < chosen.size(); ++c) {
    out.exponents[chosen[c]] = round_half_toward_zero((*coeffs)[static_cast<Eigen::Index>(c)]);
  }
  GroupElement h(d);
  for (std::size_t i = 0; i < gens.size(); ++i) h = h * pow(gens[i], out.exponents[i]);

  const Rational m(static_cast<Integer>(chosen.size()));
  Rational max_v2(0), max_u(0);
  for (std::size_t i : chosen) {
    max_v2 = std::max(max_v2, Rational(gens[i].v().squaredNorm()));
    max_u = std::max(max_u, gens[i].u() < 0 ? Rational(-gens[i].u()) : gens[i].u());
  }
  const Rational half_m = m / 2;
  const Rational c1_4 = half_m * half_m * half_m * half_m * max_v2 * max_v2;
  const Rational c2 = half_m * max_u;

  if (pair) {
    const GroupElement comm = commutator(gens[pair->first], gens[pair->second]);
    const Rational gamma = comm.u();
    const Rational residual = g.u() - h.u() - omega(g.v(), h.v()) / 2;
    out.commutator_power = round_half_toward_zero(residual / gamma);
    h = h * pow(comm, out.commutator_power);
    const Rational c2g = c2 + gamma;
    out.bound4 = {c1_4 + c2g * c2g};
  } else {
    out.bound4 = {c1_4 + c2 * c2};
  }
  out.element = h;
  out.distance4 = ck_dist4(g, h);
  return out;
}

}  // namespace heis
