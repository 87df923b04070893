#include "heis/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <set>
#include <sstream>

#include "heis/io.hpp"
#include "heis/symplectic.hpp"

namespace heis {

Integer Sampler::integer(Integer lo, Integer hi) { return std::uniform_int_distribution<Integer>(lo, hi)(engine_); }

Rational Sampler::rational(Integer num_bound, Integer den_bound) {
  return Rational(integer(-num_bound, num_bound), integer(1, den_bound));
}

Rational Sampler::positive_rational(Integer num_bound, Integer den_bound) {
  return Rational(integer(1, num_bound), integer(1, den_bound));
}

double Sampler::real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }

RatVec Sampler::rational_vector(Eigen::Index n, Integer num_bound, Integer den_bound) {
  RatVec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = rational(num_bound, den_bound);
  return v;
}

IntVec Sampler::integer_vector(Eigen::Index n, Integer bound) {
  IntVec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = integer(-bound, bound);
  return v;
}

GroupElement Sampler::group(int dim) { return {rational_vector(2 * dim), rational()}; }

LatticeElement Sampler::lattice(int dim, Integer bound) {
  IntVec v = integer_vector(2 * dim, bound);
  const Integer parity = ((parity_sum(v) % 2) + 2) % 2;
  return {std::move(v), 2 * integer(-bound, bound) + parity};
}

VerticalGroup Sampler::vertical(int dim, int k, Integer bound) {
  std::vector<RatVec> basis;
  for (int i = 0; i < k; ++i) basis.push_back(to_rational(integer_vector(2 * dim, bound)));
  return VerticalGroup(SubspaceSpec(Ambient::Plane, dim, basis));
}

GroupElement iterated_power(const GroupElement& g, Integer n) {
  GroupElement acc = GroupElement::identity(g.dim());
  const GroupElement step = n >= 0 ? g : inv(g);
  for (Integer i = 0; i < std::abs(n); ++i) acc = mul(acc, step);
  return acc;
}

double sampled_vertical_distance(const GroupElement& g, const VerticalGroup& G, std::uint64_t seed) {
  const std::vector<IntVec> basis = G.V().integer_basis();
  const Eigen::Index k = static_cast<Eigen::Index>(basis.size());
  Mat<double> B(g.v().size(), k);
  for (Eigen::Index j = 0; j < k; ++j) B.col(j) = basis[static_cast<std::size_t>(j)].cast<double>();
  const GroupElementd gd = g.cast<double>();

  // x = (s, w) parametrizes h = (B s, w); returns d_CK(g, h)^4.
  auto f = [&](const Vec<double>& x) {
    const Vec<double> vh = B * x.head(k);
    const double center = gd.u() - x[k] - 0.5 * omega(gd.v(), vh);
    const double e2 = (gd.v() - vh).squaredNorm();
    return e2 * e2 + center * center;
  };

  std::mt19937_64 rng(seed);
  const double scale = 2.0 + gd.v().cwiseAbs().maxCoeff() + std::abs(gd.u());
  std::uniform_real_distribution<double> coord(-scale, scale);
  std::vector<std::pair<double, Vec<double>>> samples;
  for (int i = 0; i < 400; ++i) {
    Vec<double> x(k + 1);
    for (Eigen::Index j = 0; j <= k; ++j) x[j] = coord(rng);
    samples.emplace_back(f(x), x);
  }
  std::sort(samples.begin(), samples.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  double best = std::numeric_limits<double>::infinity();
  for (int start = 0; start < 4; ++start) {
    Vec<double> x = samples[static_cast<std::size_t>(start)].second;
    double fx = samples[static_cast<std::size_t>(start)].first;
    for (double step = scale / 4; step > 1e-14; step /= 2) {
      bool improved = true;
      while (improved) {
        improved = false;
        for (Eigen::Index j = 0; j <= k; ++j) {
          for (double sign : {1.0, -1.0}) {
            Vec<double> y = x;
            y[j] += sign * step;
            const double fy = f(y);
            if (fy < fx) {
              x = y;
              fx = fy;
              improved = true;
            }
          }
        }
      }
    }
    best = std::min(best, fx);
  }
  return std::pow(best, 0.25);
}

std::vector<LatticeElement> box_scan_slab(const ThickenedSlab& slab, Integer box, Integer u2_bound) {
  const int d = slab.group.dim();
  std::vector<LatticeElement> out;
  IntVec v = IntVec::Constant(2 * d, -box);
  while (true) {
    const Integer parity = ((parity_sum(v) % 2) + 2) % 2;
    for (Integer u2 = -u2_bound; u2 <= u2_bound; ++u2) {
      if (((u2 % 2) + 2) % 2 != parity) continue;
      LatticeElement g(v, u2);
      if (slab_member(g, slab)) out.push_back(g);
    }
    Eigen::Index i = 0;
    while (i < v.size() && v[i] == box) v[i++] = -box;
    if (i == v.size()) break;
    ++v[i];
  }
  std::sort(out.begin(), out.end());
  return out;
}

SubgroupTag brute_force_class(const SubspaceSpec& s) {
  const int d = s.dim();
  RatVec axis = RatVec::Zero(2 * d + 1);
  axis[2 * d] = 1;
  if (s.contains(axis)) return SubgroupTag::Vertical;
  for (Eigen::Index i = 0; i < s.rank(); ++i) {
    for (Eigen::Index j = 0; j < s.rank(); ++j) {
      const GroupElement g = as_element(s.basis_vector(i));
      const GroupElement h = as_element(s.basis_vector(j));
      if (!s.contains(as_vector(g * h))) return SubgroupTag::NotASubgroup;
    }
  }
  for (Eigen::Index i = 0; i < s.rank(); ++i) {
    if (s.basis_vector(i)[2 * d] != 0) return SubgroupTag::Inclined;
  }
  return SubgroupTag::Horizontal;
}

namespace {

class Tally {
 public:
  Tally(int criterion, std::string name) : start_(std::chrono::steady_clock::now()) {
    result_.criterion = criterion;
    result_.name = std::move(name);
  }
  void expect(bool ok, const std::string& what) {
    ++result_.cases;
    if (ok) return;
    ++result_.failures;
    if (first_failure_.empty()) first_failure_ = what;
  }
  void note(const std::string& s) { notes_ += (notes_.empty() ? "" : "; ") + s; }
  CheckResult finish() {
    result_.pass = result_.failures == 0;
    result_.detail = notes_;
    if (!first_failure_.empty()) result_.detail += (notes_.empty() ? "" : "; ") + ("first failure: " + first_failure_);
    result_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return result_;
  }

 private:
  CheckResult result_;
  std::string notes_;
  std::string first_failure_;
  std::chrono::steady_clock::time_point start_;
};

std::string fixed(double x, int digits) {
  std::ostringstream os;
  os << std::setprecision(digits) << std::scientific << x;
  return os.str();
}

Word letters(std::initializer_list<std::pair<GeneratorKind, Integer>> parts) {
  Word w;
  for (const auto& [kind, e] : parts) w.push_back({{kind, 1}, e});
  return w;
}

GroupElement word_in_group(const Word& w) {
  GroupElement acc(1);
  for (const Letter& l : w) acc = acc * pow(generator_element(l.generator, 1).to_group(), l.exponent);
  return acc;
}

}  // namespace

CheckResult check_algebra(std::uint64_t seed, std::size_t cases) {
  Tally tally(1, "algebra: associativity, power law, commutation, lattice closure");
  Sampler rng(seed);
  std::size_t fails[4] = {0, 0, 0, 0};
  for (std::size_t i = 0; i < cases; ++i) {
    const int d = 1 + static_cast<int>(i % 2);
    const GroupElement g = rng.group(d), h = rng.group(d), k = rng.group(d);
    const bool assoc = (g * h) * k == g * (h * k);
    const Integer n = rng.integer(-16, 16);
    // Iterated multiplication on every 20th case; square-and-multiply otherwise.
    GroupElement oracle(d);
    if (i % 20 == 0) {
      oracle = iterated_power(g, n);
    } else {
      GroupElement base = n >= 0 ? g : inv(g);
      for (Integer e = std::abs(n); e > 0; e >>= 1) {
        if (e & 1) oracle = oracle * base;
        base = base * base;
      }
    }
    const bool power = pow(g, n) == oracle;
    const GroupElement twist(RatVec::Zero(2 * d), omega(g.v(), h.v()));
    const bool commute = g * h == (h * g) * twist;
    const LatticeElement a = rng.lattice(d), b = rng.lattice(d);
    const auto prod = LatticeElement::from_group(a.to_group() * b.to_group());
    const auto inverse = LatticeElement::from_group(inv(a.to_group()));
    const bool closed = prod && *prod == a * b && inverse && *inverse == inv(a);
    fails[0] += !assoc;
    fails[1] += !power;
    fails[2] += !commute;
    fails[3] += !closed;
    tally.expect(assoc && power && commute && closed, "case " + std::to_string(i));
  }
  tally.note(std::to_string(cases) + " cases each; failures assoc/power/commute/closure = " +
             std::to_string(fails[0]) + "/" + std::to_string(fails[1]) + "/" + std::to_string(fails[2]) + "/" +
             std::to_string(fails[3]));
  return tally.finish();
}

CheckResult check_words() {
  Tally tally(2, "word identities: xy = zyx and the y^k x^l family");
  using G = GeneratorKind;
  const LatticeElement xy = word_eval(parse_word("x y"), 1);
  tally.expect(xy == word_eval(parse_word("z y x"), 1), "xy = zyx");
  tally.expect(xy == LatticeElement(IntVec{{1, 1}}, 1), "xy = ((1,1), 1/2)");
  for (Integer K = 1; K <= 6; ++K) {
    for (Integer k = 0; k <= K; ++k) {
      for (Integer l = 0; l <= K; ++l) {
        const Word lhs = letters({{G::Y, k}, {G::X, l}, {G::Y, K - k}, {G::X, K - l}});
        const Word rhs = letters({{G::Y, K}, {G::X, K}, {G::Z, l * (K - k)}});
        const bool ok = word_eval(lhs, 1) == word_eval(rhs, 1) && word_in_group(lhs) == word_in_group(rhs) &&
                        word_eval(lhs, 1).to_group() == word_in_group(lhs);
        tally.expect(ok, "K=" + std::to_string(K) + " k=" + std::to_string(k) + " l=" + std::to_string(l));
      }
    }
    const Word yx = letters({{G::Y, K}, {G::X, K}});
    const Word xyz = letters({{G::X, K}, {G::Y, K}, {G::Z, -K * K}});
    tally.expect(word_eval(yx, 1) == word_eval(xyz, 1) && word_in_group(yx) == word_in_group(xyz),
                 "y^K x^K, K=" + std::to_string(K));
  }
  return tally.finish();
}

CheckResult check_norm_metric(std::uint64_t seed, std::size_t cases) {
  Tally tally(3, "norm and metric axioms (exponent 1/4)");
  Sampler rng(seed);
  tally.expect(ck_gauge4(GroupElement(1)).value == 0, "norm of identity");
  double worst_slack = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cases; ++i) {
    const int d = 1 + static_cast<int>(i % 2);
    const GroupElement g = rng.group(d), h = rng.group(d), f = rng.group(d);
    const Rational r = rng.positive_rational(9, 9);
    const Rational r4 = r * r * r * r;
    bool ok = (ck_gauge4(g).value == 0) == g.is_identity();
    ok = ok && ck_gauge4(dilate(r, g)).value == r4 * ck_gauge4(g).value;
    ok = ok && ck_gauge4(inv(g)).value == ck_gauge4(g).value;
    ok = ok && ck_dist4(g * f, h * f).value == ck_dist4(g, h).value;
    ok = ok && ck_dist4(dilate(r, g), dilate(r, h)).value == r4 * ck_dist4(g, h).value;
    ok = ok && ck_dist4(g, h).value == ck_dist4(h, g).value;
    const double slack = ck_norm(g) + ck_norm(h) - ck_norm(g * h);
    worst_slack = std::min(worst_slack, slack);
    ok = ok && slack >= -1e-9;
    tally.expect(ok, "case " + std::to_string(i));
  }
  tally.note("smallest triangle slack " + fixed(worst_slack, 3));
  return tally.finish();
}

CheckResult check_vertical_distance(std::uint64_t seed, std::size_t cases) {
  Tally tally(4, "closed-form distance to vertical groups vs sampled minimization");
  Sampler rng(seed);
  double worst = 0.0;
  for (int d : {1, 2}) {
    for (std::size_t i = 0; i < cases; ++i) {
      const int k = static_cast<int>(rng.integer(0, 2 * d - 1));
      const VerticalGroup G = rng.vertical(d, k);
      const GroupElement g(rng.rational_vector(2 * d, 6, 4), rng.rational(6, 4));
      const double closed = dist_to_vertical(g, G).value();
      const double sampled = sampled_vertical_distance(g, G, seed * 1000 + i + 100000 * static_cast<std::uint64_t>(d));
      worst = std::max(worst, std::abs(closed - sampled));
      tally.expect(std::abs(closed - sampled) <= 1e-6, "D=" + std::to_string(d) + " case " + std::to_string(i));
    }
  }
  tally.note("largest gap " + fixed(worst, 3));
  return tally.finish();
}

CheckResult check_set_algebra(std::uint64_t seed, std::size_t cases) {
  Tally tally(5, "set algebra: I_n^t I_m = I_(n+m)^t, center-translate invariance, Minkowski sums");
  std::size_t zero_gaps = 0;
  for (Integer t : {1, 2}) {
    for (Integer n = 0; n <= 4; ++n) {
      const IntervalSet a = interval_set(1, n, Rational(t));
      const ThickenedSlab slab{VerticalGroup::axis(1), Rational(t), Rational(0),
                               CenterInterval{Rational(-n), Rational(n)}};
      tally.expect(a.elements == box_scan_slab(slab, t + 2, 2 * n + 3), "I_n^t box scan");
      for (Integer m = 0; m <= 4; ++m) {
        std::vector<LatticeElement> expected = interval_set(1, n + m, Rational(t)).elements;
        const std::vector<LatticeElement> product = interval_product(a, m);
        if (n == 0) {
          // I_0^t has integer centers only, so its z-translates miss every
          // half-integer center of I_m^t (present once t >= sqrt 2).
          if (product != expected) ++zero_gaps;
          std::erase_if(expected, [](const LatticeElement& g) { return g.u2() % 2 != 0; });
        }
        tally.expect(product == expected,
                     "t=" + std::to_string(t) + " n=" + std::to_string(n) + " m=" + std::to_string(m));
      }
    }
  }
  Sampler rng(seed);
  for (std::size_t i = 0; i < cases; ++i) {
    const int d = 1 + static_cast<int>(i % 2);
    const VerticalGroup G = rng.vertical(d, static_cast<int>(rng.integer(0, 2 * d - 1)));
    const ThickenedSlab slab{G, rng.positive_rational(6, 3), rng.positive_rational(6, 3), std::nullopt};
    const GroupElement g(rng.rational_vector(2 * d, 6, 3), rng.rational());
    const GroupElement shifted = g * GroupElement(RatVec::Zero(2 * d), rng.rational(40, 7));
    const LatticeElement h = rng.lattice(d, 4);
    const LatticeElement hz = h * pow(LatticeElement::z(d), rng.integer(-9, 9));
    tally.expect(slab_member(g, slab) == slab_member(shifted, slab) && slab_member(h, slab) == slab_member(hz, slab),
                 "translate case " + std::to_string(i));
  }
  std::size_t split_cases = 0, sum_cases = 0;
  for (std::size_t i = 0; split_cases < cases || sum_cases < cases; ++i) {
    const int d = 1 + static_cast<int>(i % 2);
    const VerticalGroup G = rng.vertical(d, static_cast<int>(rng.integer(0, 2 * d - 1)));
    const Rational t1 = rng.positive_rational(4, 3), t2 = rng.positive_rational(4, 3);
    const Rational r1 = rng.positive_rational(4, 3), r2 = rng.positive_rational(4, 3);
    auto member = [&](const RatVec& v, const Rational& t, const Rational& r) {
      return slab_member(GroupElement(v, Rational(0)), ThickenedSlab{G, t, r, std::nullopt});
    };
    const RatVec v = rng.rational_vector(2 * d, 8, 3);
    if (split_cases < cases && member(v, t1 + t2, r1 + r2)) {
      const RatVec along = G.project(v);
      const RatVec off = v - along;
      const RatVec v1 = along * (r1 / (r1 + r2)) + off * (t1 / (t1 + t2));
      tally.expect(member(v1, t1, r1) && member(v - v1, t2, r2), "split case " + std::to_string(i));
      ++split_cases;
    }
    const RatVec w1 = rng.rational_vector(2 * d, 4, 3), w2 = rng.rational_vector(2 * d, 4, 3);
    if (sum_cases < cases && member(w1, t1, r1) && member(w2, t2, r2)) {
      tally.expect(member(w1 + w2, t1 + t2, r1 + r2), "sum case " + std::to_string(i));
      ++sum_cases;
    }
  }
  tally.note("n = 0 compared on integer centers; the full equality fails in " + std::to_string(zero_gaps) +
             " of 10 (t, m) pairs");
  tally.note(std::to_string(cases) + " cases per sampled identity");
  return tally.finish();
}

CheckResult check_lambda(Integer grid_denominator) {
  Tally tally(6, "lambda bound at D = 1");
  const LambdaBound lb = compute_lambda_bound(1, grid_denominator);
  const Rational value4 = lb.value * lb.value * lb.value * lb.value;
  tally.expect(to_double(lb.value) <= std::pow(2.0, -0.25) + 1e-9, "value <= 2^(-1/4) + 1e-9");
  tally.expect(value4 >= lb.gauge4, "value^4 bounds the analytic lambda^4");
  tally.expect(lb.worst_grid_gauge4 <= lb.gauge4, "grid maximum within the analytic bound");
  tally.expect(lb.lower_estimate <= to_double(lb.value), "lower estimate below the bound");
  // Exact nearest lattice point at every 8th grid point along each axis.
  for (Integer i = 0; i <= grid_denominator; i += 8) {
    for (Integer j = 0; j <= grid_denominator; j += 8) {
      for (Integer k = 0; k <= grid_denominator; k += 8) {
        const Rational step(1, grid_denominator), half(1, 2);
        const GroupElement g(RatVec{{Rational(i) * step - half, Rational(j) * step - half}},
                             Rational(k) * step - half);
        Rational best(-1);
        for (Integer p = -1; p <= 1; ++p) {
          for (Integer q = -1; q <= 1; ++q) {
            for (Integer u2 = -3; u2 <= 3; ++u2) {
              if (((u2 - p * q) % 2 + 2) % 2 != 0) continue;
              const Rational d4 = ck_dist4(g, LatticeElement(IntVec{{p, q}}, u2).to_group()).value;
              if (best < 0 || d4 < best) best = d4;
            }
          }
        }
        tally.expect(best <= lb.gauge4, "nearest lattice point within lambda");
      }
    }
  }
  std::ostringstream os;
  os << "lambda <= " << std::setprecision(12) << to_double(lb.value) << ", grid 1/" << grid_denominator << " ("
     << lb.grid_points << " points), worst grid d^4 = " << to_string(lb.worst_grid_gauge4)
     << ", lower estimate " << std::setprecision(6) << lb.lower_estimate;
  tally.note(os.str());
  return tally.finish();
}

CheckResult check_classification() {
  Tally tally(7, "subgroup classification and group span");
  std::set<SubspaceSpec> family;
  std::vector<RatVec> vectors;
  for (Integer p = -2; p <= 2; ++p) {
    for (Integer q = -2; q <= 2; ++q) {
      for (Integer u = -2; u <= 2; ++u) {
        if (p == 0 && q == 0 && u == 0) continue;
        vectors.push_back(to_rational(IntVec{{p, q, u}}));
      }
    }
  }
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    family.insert(SubspaceSpec(Ambient::Group, 1, std::vector<RatVec>{vectors[i]}));
    for (std::size_t j = i + 1; j < vectors.size(); ++j) {
      family.insert(SubspaceSpec(Ambient::Group, 1, std::vector<RatVec>{vectors[i], vectors[j]}));
    }
  }
  family.insert(SubspaceSpec::whole(Ambient::Group, 1));
  std::size_t counts[4] = {0, 0, 0, 0};
  for (const SubspaceSpec& s : family) {
    const SubgroupClass c = classify_subspace(s);
    ++counts[static_cast<int>(c.tag)];
    bool ok = c.tag == brute_force_class(s);
    if (c.tag == SubgroupTag::NotASubgroup) {
      ok = ok && c.witness && c.contains(c.witness->first) && c.contains(c.witness->second) &&
           !c.contains(c.witness->first * c.witness->second);
    }
    tally.expect(ok, "subspace of rank " + std::to_string(s.rank()));
  }
  auto spec = [](std::vector<RatVec> rows) { return SubspaceSpec(Ambient::Group, 1, rows); };
  tally.expect(classify_subspace(spec({to_rational(IntVec{{0, 0, 1}})})).tag == SubgroupTag::Vertical, "axis");
  tally.expect(classify_subspace(spec({to_rational(IntVec{{1, 0, 0}}), to_rational(IntVec{{0, 1, 0}})})).tag ==
                   SubgroupTag::NotASubgroup,
               "span{(e1,0),(f1,0)}");
  tally.expect(classify_subspace(spec({to_rational(IntVec{{1, 0, 1}})})).tag == SubgroupTag::Inclined, "span{(e1,1)}");
  const SubgroupClass whole = group_span({LatticeElement::x(1, 1).to_group(), LatticeElement::y(1, 1).to_group()});
  tally.expect(whole.tag == SubgroupTag::Vertical && whole.subspace == SubspaceSpec::whole(Ambient::Group, 1),
               "group_span{x1,y1} = H");
  tally.note(std::to_string(family.size()) + " subspaces: horizontal " + std::to_string(counts[0]) + ", vertical " +
             std::to_string(counts[1]) + ", inclined " + std::to_string(counts[2]) + ", not a subgroup " +
             std::to_string(counts[3]));
  return tally.finish();
}

CheckResult check_coding_oracle(std::size_t max_cells, std::size_t max_known) {
  Tally tally(8, "linear2 vs generic verdicts on the three-dot system");
  const SubshiftSystem system = three_dot();
  Caps caps;
  caps.generic_cells = std::max(caps.generic_cells, max_cells);
  // Normal-form boxes with at most max_cells cells, placed with the identity
  // at a corner or near the middle of each side.
  std::set<std::vector<LatticeElement>> windows;
  for (Integer na = 1; na <= static_cast<Integer>(max_cells); ++na) {
    for (Integer nb = 1; na * nb <= static_cast<Integer>(max_cells); ++nb) {
      for (Integer nc = 1; na * nb * nc <= static_cast<Integer>(max_cells); ++nc) {
        if (na * nb * nc < 3) continue;
        for (Integer sa : {Integer(0), -(na - 1) / 2, -(na - 1)}) {
          for (Integer sb : {Integer(0), -(nb - 1) / 2, -(nb - 1)}) {
            for (Integer sc : {Integer(0), -(nc - 1) / 2}) {
              WindowBox box;
              box.a_lo = IntVec::Constant(1, sa);
              box.a_hi = IntVec::Constant(1, sa + na - 1);
              box.b_lo = IntVec::Constant(1, sb);
              box.b_hi = IntVec::Constant(1, sb + nb - 1);
              box.c_lo = sc;
              box.c_hi = sc + nc - 1;
              windows.insert(Window(box).cells());
            }
          }
        }
      }
    }
  }
  std::size_t forced = 0, queries = 0;
  for (const std::vector<LatticeElement>& cells : windows) {
    const Window window(cells);
    const CodingEngine linear(system, window, Backend::Linear2, caps);
    const CodingEngine generic(system, window, Backend::Generic, caps);
    const std::size_t n = window.size();
    std::vector<std::size_t> subset;
    auto visit = [&](auto&& self, std::size_t from) -> void {
      const auto lc = linear.with_known(subset);
      const auto gc = generic.with_known(subset);
      for (std::size_t b = 0; b < n; ++b) {
        const ForcingOutcome lo = lc.decide(b, true);
        const ForcingOutcome go = gc.decide(b, false);
        ++queries;
        bool ok = lo.status == go.status;
        if (lo.status == ForcingStatus::Forced) {
          ++forced;
        } else if (lo.witness) {
          const Pattern x = to_pattern(window, lo.witness->x), y = to_pattern(window, lo.witness->y);
          ok = ok && locally_admissible(x, system) && locally_admissible(y, system) &&
               lo.witness->x[b] != lo.witness->y[b];
          for (std::size_t a : subset) ok = ok && lo.witness->x[a] == lo.witness->y[a];
        }
        tally.expect(ok, "window of " + std::to_string(n) + " cells, |A| = " + std::to_string(subset.size()));
      }
      if (subset.size() == max_known) return;
      for (std::size_t a = from; a < n; ++a) {
        subset.push_back(a);
        self(self, a + 1);
        subset.pop_back();
      }
    };
    visit(visit, 0);
  }
  tally.note(std::to_string(windows.size()) + " windows, " + std::to_string(queries) + " queries, " +
             std::to_string(forced) + " forced");
  return tally.finish();
}

CheckResult check_axis_nonexpansive() {
  Tally tally(9, "axis of the three-dot system: never certified, evidence at t = 2, N = 6");
  const SubshiftSystem system = three_dot();
  EngineCache cache(system);
  const VerticalGroup axis = VerticalGroup::axis(1);
  const ExpansivenessVerdict cert = certify_expansive(axis, cache, CertifyBudget{4, {3, 4, 5, 6}, Rational(1, 2)});
  tally.expect(cert.tag != ExpansivenessTag::Certified, "certify_expansive on the axis");
  const ExpansivenessVerdict ev = nonexpansive_evidence(Direction::exact(axis), cache, EvidenceBudget{Rational(2), 6, 8});
  tally.expect(ev.tag == ExpansivenessTag::EvidenceNonexpansive, "evidence verdict");
  tally.expect(ev.chain.size() == 6, "chain of six boxes");
  tally.expect(verify_evidence(ev, Direction::exact(axis), system), "chain re-verified");
  std::string detail = "certify: " + to_string(cert.tag) + " after " + std::to_string(cert.attempts.size()) +
                       " attempts; evidence: " + to_string(ev.tag);
  if (ev.p0) detail += " with p0 = " + format_lattice(*ev.p0);
  tally.note(detail);
  return tally.finish();
}

CheckResult check_scan() {
  Tally tally(10, "direction scans at D = 1, k = 1, height = 3");
  const ScanReport td = scan_directions(three_dot(), {1}, 3);
  tally.expect(td.summary.evidence >= 1 && td.summary.top_dimension_evidence, "three-dot has an evidence direction");
  tally.expect(td.summary.containment_consistent, "three-dot containment");
  const ScanReport fs = scan_directions(full_shift(), {1}, 3);
  tally.expect(fs.summary.evidence == fs.rows.size(), "full shift: evidence everywhere");
  const ScanReport fp = scan_directions(fixed_point(), {1}, 3);
  tally.expect(fp.summary.certified == fp.rows.size(), "fixed point: certified everywhere");
  tally.note("three-dot " + std::to_string(td.summary.certified) + " certified / " +
             std::to_string(td.summary.evidence) + " evidence / " + std::to_string(td.summary.unknown) +
             " unknown of " + std::to_string(td.rows.size()) + "; full shift " + std::to_string(fs.summary.evidence) +
             " evidence; fixed point " + std::to_string(fp.summary.certified) + " certified");
  return tally.finish();
}

std::vector<CheckResult> run_property_suite(std::uint64_t seed) {
  return {check_algebra(seed),         check_words(),        check_norm_metric(seed + 1),
          check_vertical_distance(seed + 2), check_set_algebra(seed + 3), check_lambda(),
          check_classification(),      check_coding_oracle(), check_axis_nonexpansive(),
          check_scan()};
}

std::string format_results(const std::vector<CheckResult>& results, bool with_time) {
  std::ostringstream os;
  for (const CheckResult& r : results) {
    os << (r.pass ? "PASS" : "FAIL") << "  [" << r.criterion << "] " << r.name << "  cases=" << r.cases
       << " failures=" << r.failures;
    if (with_time) os << " time=" << std::fixed << std::setprecision(2) << r.seconds << "s" << std::defaultfloat;
    if (!r.detail.empty()) os << "  (" << r.detail << ")";
    os << '\n';
  }
  return os.str();
}

}  // namespace heis
