#include "heis/symdyn.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "heis/geometry.hpp"

namespace heis {

std::string to_string(SystemKind kind) { return kind == SystemKind::Linear2 ? "linear2" : "generic"; }

void SubshiftSystem::validate() const {
  if (dim < 1) throw Error(ErrorKind::InvalidArgument, "D must be >= 1", "D");
  if (alphabet.empty()) throw Error(ErrorKind::InvalidArgument, "alphabet must be nonempty", "alphabet");
  std::set<std::string> seen(alphabet.begin(), alphabet.end());
  if (seen.size() != alphabet.size()) {
    throw Error(ErrorKind::InvalidArgument, "alphabet symbols must be distinct", "alphabet");
  }
  if (kind == SystemKind::Linear2 && (alphabet.size() != 2 || alphabet[0] != "0" || alphabet[1] != "1")) {
    throw Error(ErrorKind::InvalidArgument, "linear2 systems use the alphabet [\"0\",\"1\"]", "alphabet");
  }
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    const std::string path = "constraints[" + std::to_string(i) + "]";
    const LocalConstraint& c = constraints[i];
    if (c.support.empty()) throw Error(ErrorKind::InvalidArgument, "support must be nonempty", path + ".support");
    std::set<LatticeElement> cells;
    for (std::size_t j = 0; j < c.support.size(); ++j) {
      const std::string at = path + ".support[" + std::to_string(j) + "]";
      if (c.support[j].dim() != dim) throw Error(ErrorKind::DimensionMismatch, "support element has wrong D", at);
      if (!cells.insert(c.support[j]).second) throw Error(ErrorKind::InvalidArgument, "duplicate support element", at);
    }
    if (!cells.count(LatticeElement::identity(dim))) {
      throw Error(ErrorKind::InvalidArgument, "support must contain the identity", path + ".support");
    }
    if (kind == SystemKind::Linear2) {
      if (!c.allowed.empty()) {
        throw Error(ErrorKind::InvalidArgument, "linear2 constraints take no allowed list", path + ".allowed");
      }
      continue;
    }
    for (std::size_t j = 0; j < c.allowed.size(); ++j) {
      const std::string at = path + ".allowed[" + std::to_string(j) + "]";
      if (c.allowed[j].size() != c.support.size()) {
        throw Error(ErrorKind::InvalidArgument, "tuple length differs from support size", at);
      }
      for (Symbol s : c.allowed[j]) {
        if (s < 0 || static_cast<std::size_t>(s) >= alphabet.size()) {
          throw Error(ErrorKind::InvalidArgument, "symbol outside the alphabet", at);
        }
      }
    }
  }
}

SubshiftSystem SubshiftSystem::as_generic() const {
  if (kind == SystemKind::Generic) return *this;
  SubshiftSystem out = *this;
  out.kind = SystemKind::Generic;
  for (LocalConstraint& c : out.constraints) {
    const std::size_t k = c.support.size();
    c.allowed.clear();
    for (std::size_t bits = 0; bits < (std::size_t{1} << k); ++bits) {
      std::vector<Symbol> tuple(k);
      int sum = 0;
      for (std::size_t i = 0; i < k; ++i) {
        tuple[i] = static_cast<Symbol>((bits >> (k - 1 - i)) & 1u);
        sum += tuple[i];
      }
      if (sum % 2 == 0) c.allowed.push_back(std::move(tuple));
    }
  }
  return out;
}

SubshiftSystem full_shift(std::vector<std::string> alphabet, int dim) {
  SubshiftSystem s;
  s.dim = dim;
  s.alphabet = std::move(alphabet);
  s.name = "full_shift";
  s.validate();
  return s;
}

SubshiftSystem three_dot() {
  SubshiftSystem s;
  s.kind = SystemKind::Linear2;
  s.name = "three_dot";
  s.constraints.push_back({{LatticeElement::identity(1), LatticeElement::x(1, 1), LatticeElement::y(1, 1)}, {}});
  return s;
}

SubshiftSystem determined_direction() {
  SubshiftSystem s;
  s.kind = SystemKind::Linear2;
  s.name = "determined_direction";
  s.constraints.push_back({{LatticeElement::identity(1), LatticeElement::y(1, 1), LatticeElement::x(1, 1)}, {}});
  return s;
}

SubshiftSystem fixed_point(int dim) {
  SubshiftSystem s;
  s.dim = dim;
  s.alphabet = {"0"};
  s.name = "fixed_point";
  return s;
}

WindowBox WindowBox::cube(int dim, Integer half_width) {
  if (dim < 1 || half_width < 0) throw Error(ErrorKind::InvalidArgument, "cube needs D >= 1 and half width >= 0");
  WindowBox box;
  box.a_lo = box.b_lo = IntVec::Constant(dim, -half_width);
  box.a_hi = box.b_hi = IntVec::Constant(dim, half_width);
  box.c_lo = -half_width;
  box.c_hi = half_width;
  return box;
}

bool WindowBox::contains(const LatticeElement& g) const {
  require_same_dim(g.dim(), dim());
  const NormalForm nf = normal_form(g);
  for (int i = 0; i < dim(); ++i) {
    if (nf.a[i] < a_lo[i] || nf.a[i] > a_hi[i] || nf.b[i] < b_lo[i] || nf.b[i] > b_hi[i]) return false;
  }
  return c_lo <= nf.c && nf.c <= c_hi;
}

std::vector<LatticeElement> WindowBox::cells() const {
  const int d = dim();
  for (int i = 0; i < d; ++i) {
    if (a_lo[i] > 0 || a_hi[i] < 0 || b_lo[i] > 0 || b_hi[i] < 0) {
      throw Error(ErrorKind::InvalidArgument, "window box must contain the identity");
    }
  }
  if (c_lo > 0 || c_hi < 0) throw Error(ErrorKind::InvalidArgument, "window box must contain the identity");
  std::vector<LatticeElement> out;
  NormalForm nf{a_lo, b_lo, c_lo};
  while (true) {
    out.push_back(eval_normal_form(nf));
    int i = 0;
    // odometer over a_1..a_D, b_1..b_D, c
    for (; i < 2 * d + 1; ++i) {
      if (i < d) {
        if (nf.a[i] < a_hi[i]) { ++nf.a[i]; break; }
        nf.a[i] = a_lo[i];
      } else if (i < 2 * d) {
        if (nf.b[i - d] < b_hi[i - d]) { ++nf.b[i - d]; break; }
        nf.b[i - d] = b_lo[i - d];
      } else {
        if (nf.c < c_hi) { ++nf.c; break; }
        nf.c = c_lo;
      }
    }
    if (i == 2 * d + 1) break;
  }
  return out;
}

Window::Window(std::vector<LatticeElement> cells) : cells_(std::move(cells)) {
  std::sort(cells_.begin(), cells_.end());
  cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (i > 0) require_same_dim(cells_[i].dim(), cells_[0].dim());
    index_.emplace(cells_[i], i);
  }
}

std::optional<std::size_t> Window::index_of(const LatticeElement& g) const {
  auto it = index_.find(g);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Window Window::translated(const LatticeElement& g) const {
  std::vector<LatticeElement> out;
  out.reserve(cells_.size());
  for (const LatticeElement& w : cells_) out.push_back(w * g);
  return Window(std::move(out));
}

Pattern shift_act(const LatticeElement& g, const Pattern& x) {
  const LatticeElement gi = inv(g);
  Pattern out;
  for (const auto& [cell, symbol] : x) out.emplace(cell * gi, symbol);
  return out;
}

namespace {

bool tuple_allowed(const SubshiftSystem& system, const LocalConstraint& c, const std::vector<Symbol>& tuple) {
  if (system.kind == SystemKind::Linear2) {
    int sum = 0;
    for (Symbol s : tuple) sum += s;
    return sum % 2 == 0;
  }
  return std::find(c.allowed.begin(), c.allowed.end(), tuple) != c.allowed.end();
}

}  // namespace

bool locally_admissible(const Pattern& x, const SubshiftSystem& system) {
  for (const auto& [anchor, symbol] : x) {
    (void)symbol;
    for (const LocalConstraint& c : system.constraints) {
      std::vector<Symbol> tuple;
      tuple.reserve(c.support.size());
      for (const LatticeElement& s : c.support) {
        auto it = x.find(s * anchor);
        if (it == x.end()) break;
        tuple.push_back(it->second);
      }
      if (tuple.size() == c.support.size() && !tuple_allowed(system, c, tuple)) return false;
    }
  }
  return true;
}

std::vector<ConstraintInstance> constraint_instances(const Window& window, const SubshiftSystem& system) {
  std::vector<ConstraintInstance> out;
  for (const LatticeElement& anchor : window.cells()) {
    for (std::size_t ci = 0; ci < system.constraints.size(); ++ci) {
      ConstraintInstance inst{ci, anchor, {}};
      for (const LatticeElement& s : system.constraints[ci].support) {
        auto idx = window.index_of(s * anchor);
        if (!idx) break;
        inst.cells.push_back(*idx);
      }
      if (inst.cells.size() == system.constraints[ci].support.size()) out.push_back(std::move(inst));
    }
  }
  return out;
}

std::vector<std::vector<Symbol>> admissible_patterns(const Window& window, const SubshiftSystem& system,
                                                     const Caps& caps) {
  if (window.size() > caps.generic_cells) {
    throw Error(ErrorKind::CapExceeded, "window has " + std::to_string(window.size()) +
                                            " cells; generic cap is " + std::to_string(caps.generic_cells));
  }
  const std::vector<ConstraintInstance> instances = constraint_instances(window, system);
  // Each instance is checked once its last cell (in window order) is assigned.
  std::vector<std::vector<std::size_t>> due(window.size());
  for (std::size_t i = 0; i < instances.size(); ++i) {
    due[*std::max_element(instances[i].cells.begin(), instances[i].cells.end())].push_back(i);
  }
  const Symbol k = static_cast<Symbol>(system.alphabet.size());
  std::vector<std::vector<Symbol>> out;
  std::vector<Symbol> values(window.size(), 0);
  std::vector<Symbol> tuple;

  auto consistent = [&](std::size_t cell) {
    for (std::size_t i : due[cell]) {
      const ConstraintInstance& inst = instances[i];
      tuple.clear();
      for (std::size_t c : inst.cells) tuple.push_back(values[c]);
      if (!tuple_allowed(system, system.constraints[inst.constraint], tuple)) return false;
    }
    return true;
  };

  auto dfs = [&](auto&& self, std::size_t cell) -> void {
    if (cell == window.size()) {
      out.push_back(values);
      return;
    }
    for (Symbol s = 0; s < k; ++s) {
      values[cell] = s;
      if (consistent(cell)) self(self, cell + 1);
    }
  };
  dfs(dfs, 0);
  return out;
}

Pattern to_pattern(const Window& window, const std::vector<Symbol>& values) {
  require_same_dim(static_cast<long>(window.size()), static_cast<long>(values.size()));
  Pattern p;
  for (std::size_t i = 0; i < window.size(); ++i) p.emplace(window[i], values[i]);
  return p;
}

SolutionSpace solution_space(const Window& window, const SubshiftSystem& system, const Caps& caps) {
  if (system.kind != SystemKind::Linear2) {
    throw Error(ErrorKind::InvalidArgument, "solution_space needs a linear2 system");
  }
  if (window.size() > caps.linear_cells) {
    throw Error(ErrorKind::CapExceeded, "window has " + std::to_string(window.size()) +
                                            " cells; linear2 cap is " + std::to_string(caps.linear_cells));
  }
  const std::vector<ConstraintInstance> instances = constraint_instances(window, system);
  std::vector<BitVector> rows;
  rows.reserve(instances.size());
  for (const ConstraintInstance& inst : instances) {
    BitVector r(window.size());
    for (std::size_t c : inst.cells) r.set(c);
    rows.push_back(std::move(r));
  }
  SolutionSpace out;
  out.cells = window.size();
  out.instances = instances.size();
  out.constraints = gf2_rref(std::move(rows), window.size());
  out.kernel = gf2_nullspace(out.constraints);
  return out;
}

double config_distance(const Pattern& x, const Pattern& y) {
  double best = 0.0;
  for (const auto& [cell, symbol] : x) {
    auto it = y.find(cell);
    if (it == y.end() || it->second == symbol) continue;
    if (cell.is_identity()) return 1.0;
    best = std::max(best, std::exp2(-ck_gauge4(cell).root()));
  }
  return best;
}

double rho_sup(const Pattern& x, const Pattern& y, const std::vector<LatticeElement>& a) {
  double best = 0.0;
  for (const LatticeElement& g : a) {
    if (!x.count(g) || !y.count(g)) continue;
    best = std::max(best, config_distance(shift_act(g, x), shift_act(g, y)));
  }
  return best;
}

}  // namespace heis
