#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "heis/gf2.hpp"
#include "heis/group.hpp"

namespace heis {

enum class SystemKind { Generic, Linear2 };
std::string to_string(SystemKind kind);

using Symbol = int;  // index into the alphabet

/// A constraint applied at every anchor g: the symbols at s_1 g, ..., s_k g
/// must form an allowed tuple (Generic) or have even sum (Linear2).
struct LocalConstraint {
  std::vector<LatticeElement> support;
  std::vector<std::vector<Symbol>> allowed;  // Generic only
};

struct SubshiftSystem {
  int dim = 1;
  std::vector<std::string> alphabet{"0", "1"};
  SystemKind kind = SystemKind::Generic;
  std::vector<LocalConstraint> constraints;
  std::string name;

  /// Throws Error with the offending field path.
  void validate() const;
  /// The same system with parity rules spelled out as allowed tuples.
  SubshiftSystem as_generic() const;
};

SubshiftSystem full_shift(std::vector<std::string> alphabet = {"0", "1"}, int dim = 1);
/// x(g) + x(x1 g) + x(y1 g) = 0 over GF(2).
SubshiftSystem three_dot();
/// The three-dot rule read as x(x1 g) = x(g) + x(y1 g).
SubshiftSystem determined_direction();
SubshiftSystem fixed_point(int dim = 1);

/// Finite set of lattice points bounded in normal-form coordinates.
struct WindowBox {
  IntVec a_lo, a_hi, b_lo, b_hi;
  Integer c_lo = 0, c_hi = 0;

  static WindowBox cube(int dim, Integer half_width);
  int dim() const { return static_cast<int>(a_lo.size()); }
  bool contains(const LatticeElement& g) const;
  std::vector<LatticeElement> cells() const;
};

/// A finite, sorted set of cells with O(1) index lookup.
class Window {
 public:
  Window() = default;
  explicit Window(std::vector<LatticeElement> cells);
  explicit Window(const WindowBox& box) : Window(box.cells()) {}

  std::size_t size() const { return cells_.size(); }
  const std::vector<LatticeElement>& cells() const { return cells_; }
  const LatticeElement& operator[](std::size_t i) const { return cells_[i]; }
  std::optional<std::size_t> index_of(const LatticeElement& g) const;
  bool contains(const LatticeElement& g) const { return index_.count(g) != 0; }
  /// {w g : w in window}
  Window translated(const LatticeElement& g) const;

 private:
  std::vector<LatticeElement> cells_;
  std::unordered_map<LatticeElement, std::size_t, LatticeElementHash> index_;
};

using Pattern = std::map<LatticeElement, Symbol>;

/// (g x)(h) = x(h g).
Pattern shift_act(const LatticeElement& g, const Pattern& x);

/// Every constraint instance whose translated support lies in the domain holds.
bool locally_admissible(const Pattern& x, const SubshiftSystem& system);

struct ConstraintInstance {
  std::size_t constraint = 0;
  LatticeElement anchor;
  std::vector<std::size_t> cells;  // window indices of s_i * anchor
};

/// Instances whose whole support lies in the window, ordered by anchor.
std::vector<ConstraintInstance> constraint_instances(const Window& window, const SubshiftSystem& system);

struct Caps {
  std::size_t generic_cells = 16;
  std::size_t linear_cells = 4096;
};

/// Locally admissible total patterns on the window, one symbol per cell in
/// window order, in lexicographic order of those vectors.
std::vector<std::vector<Symbol>> admissible_patterns(const Window& window, const SubshiftSystem& system,
                                                     const Caps& caps = {});

Pattern to_pattern(const Window& window, const std::vector<Symbol>& values);

struct SolutionSpace {
  GF2Echelon constraints;          // columns are window cells
  std::vector<BitVector> kernel;   // basis of admissible patterns
  std::size_t cells = 0;
  std::size_t instances = 0;
  std::size_t kernel_dim() const { return kernel.size(); }
};

SolutionSpace solution_space(const Window& window, const SubshiftSystem& system, const Caps& caps = {});

/// Expansive constant of the configuration metric.
inline constexpr double kEta = 0.5;

/// rho(x, y) = 1 if x(0) != y(0), else 2^-(smallest norm of a disagreement).
/// Patterns share a domain containing 0; agreement everywhere gives 0.
double config_distance(const Pattern& x, const Pattern& y);
/// sup over g in a of rho(g x, g y), restricted to g in the common domain.
double rho_sup(const Pattern& x, const Pattern& y, const std::vector<LatticeElement>& a);

}  // namespace heis
