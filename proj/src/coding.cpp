#include "heis/coding.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_map>

#include <Eigen/Dense>

namespace heis {

std::string to_string(Backend backend) {
  switch (backend) {
    case Backend::Generic: return "generic";
    case Backend::Linear2: return "linear2";
    default: return "auto";
  }
}

std::string to_string(CodingTag tag) { return tag == CodingTag::Forces ? "Forces" : "NotForcedInWindow"; }

std::string to_string(ExpansivenessTag tag) {
  switch (tag) {
    case ExpansivenessTag::Certified: return "Certified";
    case ExpansivenessTag::EvidenceNonexpansive: return "EvidenceNonexpansive";
    default: return "Unknown";
  }
}

CodingEngine::CodingEngine(const SubshiftSystem& system, Window window, Backend backend, const Caps& caps,
                           std::size_t node_budget)
    : system_(system), window_(std::move(window)), node_budget_(node_budget) {
  system_.validate();
  if (backend == Backend::Linear2 && system_.kind != SystemKind::Linear2) {
    throw Error(ErrorKind::InvalidArgument, "the linear2 backend needs a linear2 system");
  }
  if (backend == Backend::Linear2 || (backend == Backend::Auto && system_.kind == SystemKind::Linear2)) {
    mode_ = Mode::Linear2;
    SolutionSpace space = solution_space(window_, system_, caps);
    kernel_ = std::move(space.kernel);
    cell_rows_.assign(window_.size(), BitVector(kernel_.size()));
    for (std::size_t j = 0; j < kernel_.size(); ++j) {
      for (std::size_t c : kernel_[j].support()) cell_rows_[c].set(j);
    }
    return;
  }
  system_ = system_.as_generic();
  if (window_.size() <= caps.generic_cells) {
    mode_ = Mode::Enumerate;
    patterns_ = admissible_patterns(window_, system_, caps);
    return;
  }
  mode_ = Mode::PairSearch;
  instances_ = constraint_instances(window_, system_);
  due_.assign(window_.size(), {});
  for (std::size_t i = 0; i < instances_.size(); ++i) {
    due_[*std::max_element(instances_[i].cells.begin(), instances_[i].cells.end())].push_back(i);
  }
}

std::string CodingEngine::backend_name() const {
  switch (mode_) {
    case Mode::Linear2: return "linear2";
    case Mode::Enumerate: return "generic";
    default: return "generic-search";
  }
}

CodingEngine::Context CodingEngine::with_known(std::vector<std::size_t> known) const {
  return Context(*this, std::move(known));
}

CodingEngine::Context::Context(const CodingEngine& engine, std::vector<std::size_t> known)
    : engine_(&engine), known_(std::move(known)), is_known_(engine.window_.size(), false) {
  std::sort(known_.begin(), known_.end());
  known_.erase(std::unique(known_.begin(), known_.end()), known_.end());
  for (std::size_t a : known_) {
    if (a >= is_known_.size()) throw Error(ErrorKind::InvalidArgument, "known cell outside the window");
    is_known_[a] = true;
  }
  if (engine.mode_ == Mode::Linear2) {
    basis_ = std::make_shared<GF2Basis>(engine.kernel_.size());
    for (std::size_t a : known_) basis_->insert(engine.cell_rows_[a]);
  } else if (engine.mode_ == Mode::Enumerate) {
    fiber_first_.resize(engine.patterns_.size());
    unsigned bits = 0;
    while ((std::size_t{1} << bits) < engine.system_.alphabet.size()) ++bits;
    if (bits * known_.size() <= 64) {
      std::unordered_map<std::uint64_t, std::size_t> first;
      for (std::size_t p = 0; p < engine.patterns_.size(); ++p) {
        std::uint64_t key = 0;
        for (std::size_t a : known_) key = (key << bits) | static_cast<std::uint64_t>(engine.patterns_[p][a]);
        fiber_first_[p] = first.emplace(key, p).first->second;
      }
    } else {
      std::map<std::vector<Symbol>, std::size_t> first;
      std::vector<Symbol> key(known_.size());
      for (std::size_t p = 0; p < engine.patterns_.size(); ++p) {
        for (std::size_t i = 0; i < known_.size(); ++i) key[i] = engine.patterns_[p][known_[i]];
        fiber_first_[p] = first.emplace(key, p).first->second;
      }
    }
  }
}

ForcingOutcome CodingEngine::Context::decide(std::size_t target, bool want_witness) const {
  const CodingEngine& e = *engine_;
  if (target >= is_known_.size()) throw Error(ErrorKind::InvalidArgument, "target cell outside the window");
  if (is_known_[target]) return {ForcingStatus::Forced, std::nullopt};
  switch (e.mode_) {
    case Mode::Linear2: {
      if (basis_->contains(e.cell_rows_[target])) return {ForcingStatus::Forced, std::nullopt};
      if (!want_witness) return {ForcingStatus::NotForced, std::nullopt};
      if (!annihilator_) {
        std::vector<BitVector> rows;
        for (std::size_t a : known_) rows.push_back(e.cell_rows_[a]);
        annihilator_ = std::make_shared<std::vector<BitVector>>(
            gf2_nullspace(gf2_rref(std::move(rows), e.kernel_.size())));
      }
      for (const BitVector& n : *annihilator_) {
        if (!e.cell_rows_[target].dot(n)) continue;
        CodingWitness w{std::vector<Symbol>(e.window_.size(), 0), std::vector<Symbol>(e.window_.size(), 0),
                        e.window_[target]};
        for (std::size_t c = 0; c < e.window_.size(); ++c) w.y[c] = e.cell_rows_[c].dot(n) ? 1 : 0;
        return {ForcingStatus::NotForced, std::move(w)};
      }
      throw Error(ErrorKind::InvalidArgument, "internal: no annihilating vector for an unforced cell");
    }
    case Mode::Enumerate: {
      for (std::size_t p = 0; p < e.patterns_.size(); ++p) {
        const std::size_t f = fiber_first_[p];
        if (e.patterns_[p][target] == e.patterns_[f][target]) continue;
        std::optional<CodingWitness> w;
        if (want_witness) w = CodingWitness{e.patterns_[f], e.patterns_[p], e.window_[target]};
        return {ForcingStatus::NotForced, std::move(w)};
      }
      return {ForcingStatus::Forced, std::nullopt};
    }
    default:
      return pair_search(target);
  }
}

ForcingOutcome CodingEngine::Context::pair_search(std::size_t target) const {
  const CodingEngine& e = *engine_;
  const std::size_t n = e.window_.size();
  const Symbol k = static_cast<Symbol>(e.system_.alphabet.size());
  if (k < 2) return {ForcingStatus::Forced, std::nullopt};
  std::vector<Symbol> x(n, 0), y(n, 0), tuple;
  std::size_t nodes = 0;
  bool exceeded = false;

  auto holds = [&](const std::vector<Symbol>& values, std::size_t cell) {
    for (std::size_t i : e.due_[cell]) {
      const ConstraintInstance& inst = e.instances_[i];
      tuple.clear();
      for (std::size_t c : inst.cells) tuple.push_back(values[c]);
      const auto& allowed = e.system_.constraints[inst.constraint].allowed;
      if (std::find(allowed.begin(), allowed.end(), tuple) == allowed.end()) return false;
    }
    return true;
  };

  auto dfs = [&](auto&& self, std::size_t cell) -> bool {
    if (cell == n) return true;
    if (++nodes > e.node_budget_) {
      exceeded = true;
      return false;
    }
    for (Symbol s = 0; s < k; ++s) {
      x[cell] = s;
      if (!holds(x, cell)) continue;
      for (Symbol t = 0; t < k; ++t) {
        if (is_known_[cell] && t != s) continue;
        if (cell == target && t == s) continue;
        y[cell] = t;
        if (!holds(y, cell)) continue;
        if (self(self, cell + 1)) return true;
        if (exceeded) return false;
      }
    }
    return false;
  };

  if (dfs(dfs, 0)) return {ForcingStatus::NotForced, CodingWitness{x, y, e.window_[target]}};
  return {exceeded ? ForcingStatus::Undecided : ForcingStatus::Forced, std::nullopt};
}

CodingVerdict weak_code_check(const CodingQuery& q, Backend backend, const Caps& caps) {
  q.system.validate();
  std::vector<std::size_t> known, targets;
  for (std::size_t i = 0; i < q.A.size(); ++i) {
    auto idx = q.window.index_of(q.A[i]);
    if (!idx) throw Error(ErrorKind::InvalidArgument, "cell outside the window", "A[" + std::to_string(i) + "]");
    known.push_back(*idx);
  }
  for (std::size_t i = 0; i < q.B.size(); ++i) {
    auto idx = q.window.index_of(q.B[i]);
    if (!idx) throw Error(ErrorKind::InvalidArgument, "cell outside the window", "B[" + std::to_string(i) + "]");
    targets.push_back(*idx);
  }
  const bool generic = backend == Backend::Generic || (backend == Backend::Auto && q.system.kind == SystemKind::Generic);
  if (generic && q.window.size() > caps.generic_cells) {
    throw Error(ErrorKind::CapExceeded, "window has " + std::to_string(q.window.size()) +
                                            " cells; generic cap is " + std::to_string(caps.generic_cells));
  }
  const CodingEngine engine(q.system, q.window, backend, caps);
  const CodingEngine::Context ctx = engine.with_known(known);
  CodingVerdict out{CodingTag::Forces, std::nullopt, engine.backend_name()};
  for (std::size_t b : targets) {
    ForcingOutcome o = ctx.decide(b);
    if (o.status == ForcingStatus::NotForced) {
      out.tag = CodingTag::NotForcedInWindow;
      out.witness = std::move(o.witness);
      return out;
    }
  }
  return out;
}

std::shared_ptr<const CodingEngine> EngineCache::cube(Integer half_width) {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = engines_.find(half_width);
  if (it != engines_.end()) return it->second;
  auto engine = std::make_shared<const CodingEngine>(system_, Window(WindowBox::cube(system_.dim, half_width)),
                                                     Backend::Auto, caps_, node_budget_);
  engines_.emplace(half_width, engine);
  return engine;
}

namespace {

std::string vector_label(const IntVec& v) {
  std::ostringstream os;
  os << '(';
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

/// Enumerates integer vectors of [-bound, bound]^n in lexicographic order.
template <typename F>
void for_each_vector(Eigen::Index n, Integer bound, F&& f) {
  IntVec v = IntVec::Constant(n, -bound);
  while (true) {
    f(v);
    Eigen::Index i = n - 1;
    while (i >= 0 && v[i] == bound) v[i--] = -bound;
    if (i < 0) return;
    ++v[i];
  }
}

Integer parity_rep(const IntVec& v) { return ((parity_sum(v) % 2) + 2) % 2; }

Integer nf_extent(const LatticeElement& g) {
  const NormalForm nf = normal_form(g);
  Integer m = std::abs(nf.c);
  for (Eigen::Index i = 0; i < nf.a.size(); ++i) m = std::max({m, std::abs(nf.a[i]), std::abs(nf.b[i])});
  return m;
}

std::size_t cube_cells(int dim, Integer half_width) {
  std::size_t n = 1;
  for (int i = 0; i < 2 * dim + 1; ++i) n *= static_cast<std::size_t>(2 * half_width + 1);
  return n;
}

/// GF(2) sums of constraint instances equal to each target outside the known cells.
std::vector<ForcingInstance> linear_combinations(const CodingEngine& engine, const std::vector<std::size_t>& known,
                                                 const std::vector<LatticeElement>& targets) {
  const Window& window = engine.window();
  const std::vector<ConstraintInstance> instances = constraint_instances(window, engine.system());
  const std::size_t n = window.size();
  const std::size_t m = instances.size();
  std::vector<bool> is_known(n, false);
  for (std::size_t a : known) is_known[a] = true;
  GF2Basis basis(n + m);
  for (std::size_t i = 0; i < m; ++i) {
    BitVector row(n + m);
    for (std::size_t c : instances[i].cells) {
      if (!is_known[c]) row.set(c);
    }
    row.set(n + i);
    basis.insert(std::move(row));
  }
  std::vector<ForcingInstance> out;
  for (const LatticeElement& target : targets) {
    BitVector e(n + m);
    e.set(*window.index_of(target));
    const BitVector r = basis.reduce(std::move(e));
    ForcingInstance inst{target, {}};
    for (std::size_t j : r.support()) {
      if (j < n) throw Error(ErrorKind::InvalidArgument, "internal: forced target without a constraint sum");
      inst.combination.emplace_back(instances[j - n].constraint, instances[j - n].anchor);
    }
    out.push_back(std::move(inst));
  }
  return out;
}

}  // namespace

Direction Direction::exact(VerticalGroup group) {
  Direction d;
  d.dim_ = group.dim();
  d.rank_ = group.V().rank();
  std::string label;
  for (const IntVec& b : group.V().integer_basis()) label += (label.empty() ? "" : ";") + vector_label(b);
  d.label_ = label.empty() ? "{0}" : label;
  d.projector_ = Mat<double>(group.projector().rows(), group.projector().cols());
  for (Eigen::Index i = 0; i < d.projector_.rows(); ++i) {
    for (Eigen::Index j = 0; j < d.projector_.cols(); ++j) d.projector_(i, j) = to_double(group.projector()(i, j));
  }
  d.group_ = std::move(group);
  return d;
}

Direction Direction::approximate(int dim, const std::vector<Vec<double>>& basis) {
  if (dim < 1) throw Error(ErrorKind::InvalidArgument, "dimension D must be >= 1");
  Direction d;
  d.dim_ = dim;
  Mat<double> b(2 * dim, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    require_same_dim(basis[i].size(), 2 * dim);
    b.col(static_cast<Eigen::Index>(i)) = basis[i];
  }
  std::ostringstream os;
  os.precision(6);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    os << (i ? ";" : "") << '(';
    for (Eigen::Index j = 0; j < basis[i].size(); ++j) os << (j ? "," : "") << basis[i][j];
    os << ')';
  }
  d.label_ = basis.empty() ? "{0}" : "~" + os.str();
  if (basis.empty()) {
    d.projector_ = Mat<double>::Zero(2 * dim, 2 * dim);
    return d;
  }
  Eigen::ColPivHouseholderQR<Mat<double>> qr(b);
  d.rank_ = qr.rank();
  const Mat<double> q = qr.householderQ() * Mat<double>::Identity(2 * dim, d.rank_);
  d.projector_ = q * q.transpose();
  return d;
}

bool Direction::within(const IntVec& v, const Rational& t) const {
  require_same_dim(v.size(), 2 * dim_);
  if (group_) return group_->off_squared(v) <= t * t;
  const double tt = to_double(t);
  return off_squared(v) <= tt * tt + 1e-9;
}

double Direction::off_squared(const IntVec& v) const {
  if (group_) return to_double(group_->off_squared(v));
  const Vec<double> w = v.cast<double>();
  return (w - projector_ * w).squaredNorm();
}

std::string Direction::label() const { return label_; }

std::vector<std::size_t> slab_cells(const Window& window, const Direction& direction, const Rational& t) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < window.size(); ++i) {
    if (direction.within(window[i].v(), t)) out.push_back(i);
  }
  return out;
}

std::vector<LatticeElement> widening_targets(const VerticalGroup& G, const Rational& t, const Rational& outer,
                                             const Rational& along) {
  const Integer bound = isqrt_floor(outer * outer + along * along) + 1;
  std::vector<LatticeElement> out;
  for_each_vector(2 * G.dim(), bound, [&](const IntVec& v) {
    const Rational off = G.off_squared(v);
    if (off <= t * t || off > outer * outer || G.along_squared(v) > along * along) return;
    out.emplace_back(v, parity_rep(v));
  });
  std::sort(out.begin(), out.end());
  return out;
}

ExpansivenessVerdict certify_expansive(const VerticalGroup& G, EngineCache& cache, const CertifyBudget& budget) {
  require_same_dim(G.dim(), cache.system().dim);
  if (budget.t_max < 1 || budget.half_widths.empty() || budget.epsilon <= 0) {
    throw Error(ErrorKind::InvalidArgument, "certify budget needs t_max >= 1, a window, and epsilon > 0");
  }
  const Direction direction = Direction::exact(G);
  ExpansivenessVerdict out;
  out.direction = direction.label();
  out.system = cache.system().name;
  out.epsilon = budget.epsilon;
  out.lambda = lambda_upper(G.dim());

  for (int ti = 1; ti <= budget.t_max; ++ti) {
    const Rational width(ti);
    const Rational outer = width + budget.epsilon + out.lambda * 2;
    const std::vector<LatticeElement> targets = widening_targets(G, width, outer, out.lambda);
    for (Integer h : budget.half_widths) {
      CertifyAttempt attempt{width, h, 0, targets.size(), 0, "", std::nullopt};
      std::shared_ptr<const CodingEngine> engine;
      try {
        engine = cache.cube(h);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::CapExceeded) throw;
        attempt.status = "window exceeds cap";
        out.attempts.push_back(attempt);
        continue;
      }
      const Window& window = engine->window();
      auto outside = std::find_if(targets.begin(), targets.end(),
                                  [&](const LatticeElement& g) { return !window.contains(g); });
      if (outside != targets.end()) {
        attempt.status = "target outside window";
        attempt.first_open = *outside;
        out.attempts.push_back(attempt);
        continue;
      }
      const std::vector<std::size_t> known = slab_cells(window, direction, width);
      attempt.known = known.size();
      const CodingEngine::Context ctx = engine->with_known(known);
      for (const LatticeElement& target : targets) {
        const ForcingOutcome o = ctx.decide(*window.index_of(target), false);
        if (o.status != ForcingStatus::Forced) {
          attempt.status = o.status == ForcingStatus::NotForced ? "not forced" : "search budget exhausted";
          attempt.first_open = target;
          break;
        }
        ++attempt.forced;
      }
      if (attempt.forced < targets.size()) {
        out.attempts.push_back(attempt);
        continue;
      }
      attempt.status = "all targets forced";
      out.attempts.push_back(attempt);

      Rational extent2(0);
      for (std::size_t a : known) extent2 = std::max(extent2, G.along_squared(window[a].v()));
      out.tag = ExpansivenessTag::Certified;
      out.width = width;
      out.half_width = h;
      out.t = width + out.lambda;
      out.r = sqrt_upper(extent2) + out.lambda;
      if (engine->mode() == CodingEngine::Mode::Linear2) {
        out.certificate = linear_combinations(*engine, known, targets);
      } else {
        for (const LatticeElement& target : targets) out.certificate.push_back({target, {}});
      }
      out.note = "every widening target is forced by the width-" + to_string(width) +
                 " slab, so G^t(r) codes G^(t+epsilon)(0)";
      return out;
    }
  }
  out.note = "no certificate within budget";
  return out;
}

ExpansivenessVerdict certify_expansive(const VerticalGroup& G, const SubshiftSystem& system,
                                       const CertifyBudget& budget, const Caps& caps) {
  EngineCache cache(system, caps);
  return certify_expansive(G, cache, budget);
}

ExpansivenessVerdict nonexpansive_evidence(const Direction& direction, EngineCache& cache,
                                           const EvidenceBudget& budget) {
  require_same_dim(direction.dim(), cache.system().dim);
  if (budget.n < 1 || budget.t < 0) throw Error(ErrorKind::InvalidArgument, "evidence needs N >= 1 and t >= 0");
  const int d = direction.dim();
  ExpansivenessVerdict out;
  out.direction = direction.label();
  out.system = cache.system().name;
  out.width = budget.t;
  out.lambda = lambda_upper(d);
  out.evidence_n = budget.n;

  struct Candidate {
    double off2;
    Integer norm2;
    LatticeElement cell;
  };
  std::vector<Candidate> candidates;
  const Integer bound = isqrt_floor(budget.t * budget.t) + 2;
  for_each_vector(2 * d, bound, [&](const IntVec& v) {
    if (direction.within(v, budget.t)) return;
    candidates.push_back({direction.off_squared(v), v.squaredNorm(), LatticeElement(v, parity_rep(v))});
  });
  std::stable_sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.off2 != b.off2) return a.off2 < b.off2;
    if (a.norm2 != b.norm2) return a.norm2 < b.norm2;
    return a.cell < b.cell;
  });

  const bool linear = cache.system().kind == SystemKind::Linear2;
  std::size_t tried = 0;
  for (const Candidate& cand : candidates) {
    if (tried == budget.max_candidates) break;
    const Integer h0 = std::max<Integer>(1, nf_extent(cand.cell));
    const Integer h_max = h0 + budget.n - 1;
    if (linear && cube_cells(d, h_max) > cache.caps().linear_cells) continue;
    ++tried;

    auto step = [&](int n) -> std::optional<EvidenceStep> {
      const Integer h = h0 + n - 1;
      std::shared_ptr<const CodingEngine> engine = cache.cube(h);
      const std::vector<std::size_t> known = slab_cells(engine->window(), direction, budget.t);
      ForcingOutcome o = engine->with_known(known).decide(*engine->window().index_of(cand.cell), true);
      if (o.status != ForcingStatus::NotForced) return std::nullopt;
      return EvidenceStep{n, h, known.size(), std::move(*o.witness)};
    };

    // The largest box is the strongest condition; restrictions of its witness
    // would serve the smaller boxes, but each box gets its own witness.
    std::optional<EvidenceStep> last = step(budget.n);
    CertifyAttempt attempt{budget.t, h_max, 0, 1, 0, "", cand.cell};
    if (!last) {
      attempt.status = "pinned cell forced in the largest box";
      out.attempts.push_back(attempt);
      continue;
    }
    std::vector<EvidenceStep> chain;
    bool complete = true;
    for (int n = 1; n < budget.n; ++n) {
      std::optional<EvidenceStep> s = step(n);
      if (!s) {
        complete = false;
        break;
      }
      chain.push_back(std::move(*s));
    }
    if (!complete) {
      attempt.status = "pinned cell forced in a smaller box";
      out.attempts.push_back(attempt);
      continue;
    }
    chain.push_back(std::move(*last));
    attempt.status = "disagreement found in every box";
    out.attempts.push_back(attempt);
    out.tag = ExpansivenessTag::EvidenceNonexpansive;
    out.p0 = cand.cell;
    out.half_width = h_max;
    out.chain = std::move(chain);
    out.note = "pattern pairs agree on the slab and differ at p0 in boxes n = 1.." + std::to_string(budget.n) +
               "; a chain for every n would prove nonexpansiveness by compactness, this one stops at N";
    return out;
  }
  out.note = "no pinned cell admits a disagreement in every box";
  return out;
}

ExpansivenessVerdict nonexpansive_evidence(const Direction& direction, const SubshiftSystem& system,
                                           const EvidenceBudget& budget, const Caps& caps) {
  EngineCache cache(system, caps);
  return nonexpansive_evidence(direction, cache, budget);
}

ExpansivenessVerdict direction_verdict(const VerticalGroup& G, EngineCache& cache, const CertifyBudget& certify,
                                       const EvidenceBudget& evidence) {
  ExpansivenessVerdict cert = certify_expansive(G, cache, certify);
  if (cert.tag == ExpansivenessTag::Certified) return cert;
  ExpansivenessVerdict ev = nonexpansive_evidence(Direction::exact(G), cache, evidence);
  ev.attempts.insert(ev.attempts.begin(), cert.attempts.begin(), cert.attempts.end());
  if (ev.tag != ExpansivenessTag::EvidenceNonexpansive) ev.note = cert.note + "; " + ev.note;
  return ev;
}

bool recheck_certificate(const ExpansivenessVerdict& verdict, const VerticalGroup& G, const SubshiftSystem& system,
                         const Caps& caps) {
  if (verdict.tag != ExpansivenessTag::Certified || !verdict.half_width) return false;
  if (verdict.lambda < lambda_upper(G.dim()) || verdict.epsilon <= 0) return false;
  const Rational outer = verdict.width + verdict.epsilon + verdict.lambda * 2;
  const std::vector<LatticeElement> targets = widening_targets(G, verdict.width, outer, verdict.lambda);
  if (targets.size() != verdict.certificate.size()) return false;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (!(targets[i] == verdict.certificate[i].target)) return false;
  }
  if (system.kind == SystemKind::Linear2) {
    for (const ForcingInstance& inst : verdict.certificate) {
      std::set<LatticeElement> odd;
      for (const auto& [ci, anchor] : inst.combination) {
        if (ci >= system.constraints.size()) return false;
        for (const LatticeElement& s : system.constraints[ci].support) {
          const LatticeElement cell = s * anchor;
          if (!odd.erase(cell)) odd.insert(cell);
        }
      }
      if (!odd.erase(inst.target)) return false;
      for (const LatticeElement& cell : odd) {
        if (G.off_squared(cell.v()) > verdict.width * verdict.width) return false;
      }
    }
    return true;
  }
  EngineCache cache(system, caps);
  std::shared_ptr<const CodingEngine> engine = cache.cube(*verdict.half_width);
  const Direction direction = Direction::exact(G);
  const CodingEngine::Context ctx = engine->with_known(slab_cells(engine->window(), direction, verdict.width));
  for (const LatticeElement& target : targets) {
    auto idx = engine->window().index_of(target);
    if (!idx || ctx.decide(*idx, false).status != ForcingStatus::Forced) return false;
  }
  return true;
}

bool verify_evidence(const ExpansivenessVerdict& verdict, const Direction& direction, const SubshiftSystem& system) {
  if (verdict.tag != ExpansivenessTag::EvidenceNonexpansive || !verdict.p0) return false;
  if (verdict.chain.size() != static_cast<std::size_t>(verdict.evidence_n)) return false;
  const LatticeElement& p0 = *verdict.p0;
  if (direction.within(p0.v(), verdict.width)) return false;
  for (std::size_t i = 0; i < verdict.chain.size(); ++i) {
    const EvidenceStep& s = verdict.chain[i];
    if (s.n != static_cast<int>(i) + 1) return false;
    if (i > 0 && s.half_width != verdict.chain[i - 1].half_width + 1) return false;
    if (!(s.witness.cell == p0)) return false;
    const Window window(WindowBox::cube(system.dim, s.half_width));
    if (s.witness.x.size() != window.size() || s.witness.y.size() != window.size()) return false;
    const Pattern x = to_pattern(window, s.witness.x);
    const Pattern y = to_pattern(window, s.witness.y);
    if (!locally_admissible(x, system) || !locally_admissible(y, system)) return false;
    auto p = window.index_of(p0);
    if (!p || s.witness.x[*p] == s.witness.y[*p]) return false;
    for (std::size_t c = 0; c < window.size(); ++c) {
      if (direction.within(window[c].v(), verdict.width) && s.witness.x[c] != s.witness.y[c]) return false;
    }
  }
  return true;
}

namespace {

unsigned worker_count(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("HEIS_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return static_cast<unsigned>(n);
  }
  return 1;
}

std::string decimal_up(const Rational& x) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(4);
  os << to_double(sqrt_upper(x * x, 14));
  return os.str();
}

}  // namespace

ScanReport scan_directions(const SubshiftSystem& system, const std::vector<int>& ks, int height,
                           const ScanBudget& budget, const Caps& caps) {
  system.validate();
  const int d = system.dim;
  std::vector<std::pair<int, VerticalGroup>> directions;
  for (int k : ks) {
    if (k == 0) {
      directions.emplace_back(0, VerticalGroup::axis(d));
      continue;
    }
    for (VerticalGroup& g : rational_directions(d, k, height)) directions.emplace_back(k, std::move(g));
  }

  EngineCache cache(system, caps);
  std::vector<std::optional<ScanRow>> rows(directions.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto work = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= directions.size()) return;
      try {
        const auto start = std::chrono::steady_clock::now();
        const auto& [k, group] = directions[i];
        const ExpansivenessVerdict v = direction_verdict(group, cache, budget.certify, budget.evidence);
        ScanRow row{Direction::exact(group).label(), k, group, v.tag, {}, {}, {}, 0};
        row.t = to_string(v.width);
        if (v.tag == ExpansivenessTag::Certified) row.r = decimal_up(*v.r);
        if (v.half_width) {
          row.window = std::to_string(2 * *v.half_width + 1) + "^" + std::to_string(2 * d + 1);
        }
        row.millis = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
                         .count();
        rows[i] = std::move(row);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  const unsigned threads = std::min<unsigned>(worker_count(budget.threads),
                                               static_cast<unsigned>(std::max<std::size_t>(1, directions.size())));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);

  ScanReport report;
  report.system = system.name;
  for (auto& row : rows) report.rows.push_back(std::move(*row));
  ScanSummary& s = report.summary;
  bool top_scanned = false;
  for (const ScanRow& row : report.rows) {
    if (row.verdict == ExpansivenessTag::Certified) ++s.certified;
    if (row.verdict == ExpansivenessTag::EvidenceNonexpansive) ++s.evidence;
    if (row.verdict == ExpansivenessTag::Unknown) ++s.unknown;
    if (row.k == 2 * d - 1) {
      top_scanned = true;
      if (row.verdict == ExpansivenessTag::EvidenceNonexpansive) s.top_dimension_evidence = true;
    }
  }
  for (const ScanRow& low : report.rows) {
    for (const ScanRow& high : report.rows) {
      if (high.verdict != ExpansivenessTag::EvidenceNonexpansive || !high.group.V().contains(low.group.V())) continue;
      if (low.verdict == ExpansivenessTag::Certified) s.containment_consistent = false;
    }
    if (!top_scanned || low.k >= 2 * d - 1 || low.verdict != ExpansivenessTag::EvidenceNonexpansive) continue;
    const bool lifted = std::any_of(report.rows.begin(), report.rows.end(), [&](const ScanRow& high) {
      return high.k == 2 * d - 1 && high.verdict == ExpansivenessTag::EvidenceNonexpansive &&
             high.group.V().contains(low.group.V());
    });
    if (!lifted) s.evidence_lifts_to_top = false;
  }
  return report;
}

ClosureReport coding_closure_check(const SubshiftSystem& system, const Window& window,
                                   const std::vector<LatticeElement>& A, const std::vector<LatticeElement>& B,
                                   const std::vector<LatticeElement>& A2, const std::vector<LatticeElement>& B2,
                                   const std::vector<LatticeElement>& C, const Caps& caps) {
  ClosureReport out;
  auto check = [&](const std::vector<LatticeElement>& a, const std::vector<LatticeElement>& b, const Window& w) {
    return weak_code_check({system, a, b, w}, Backend::Auto, caps).tag == CodingTag::Forces;
  };
  auto record = [&](const std::string& what, bool ok) {
    out.checks.push_back(what + (ok ? ": ok" : ": FAILED"));
    out.ok = out.ok && ok;
  };
  const bool first = check(A, B, window);
  const bool second = check(A2, B2, window);
  if (first && second) {
    std::vector<LatticeElement> a = A, b = B;
    a.insert(a.end(), A2.begin(), A2.end());
    b.insert(b.end(), B2.begin(), B2.end());
    record("union forces union", check(a, b, window));
  }
  if (first) {
    for (const LatticeElement& c : C) {
      std::vector<LatticeElement> a, b;
      for (const LatticeElement& g : A) a.push_back(g * c);
      for (const LatticeElement& g : B) b.push_back(g * c);
      record("translate forces translate", check(a, b, window.translated(c)));
    }
  }
  if (out.checks.empty()) out.checks.push_back("no forcing premise held; nothing to derive");
  return out;
}

}  // namespace heis
