#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "heis/error.hpp"
#include "heis/rational.hpp"
#include "heis/symplectic.hpp"

namespace heis {

/// A point (v, u) of the continuous Heisenberg group over R^{2D} x R.
/// Scalar is Rational for exact work and double for sampling oracles.
template <typename Scalar>
class BasicGroupElement {
 public:
  using Vector = Vec<Scalar>;

  explicit BasicGroupElement(int dim = 1) : v_(Vector::Zero(2 * dim)), u_(0) {
    if (dim < 1) throw Error(ErrorKind::InvalidArgument, "dimension D must be >= 1");
  }

  BasicGroupElement(Vector v, Scalar u) : v_(std::move(v)), u_(std::move(u)) {
    if (v_.size() == 0 || v_.size() % 2 != 0) {
      throw Error(ErrorKind::DimensionMismatch, "horizontal part must have length 2D with D >= 1");
    }
  }

  static BasicGroupElement identity(int dim) { return BasicGroupElement(dim); }

  int dim() const { return static_cast<int>(v_.size() / 2); }
  const Vector& v() const { return v_; }
  const Scalar& u() const { return u_; }
  auto p() const { return v_.head(dim()); }
  auto q() const { return v_.tail(dim()); }

  bool is_identity() const { return u_ == Scalar(0) && v_.isZero(); }

  template <typename Other>
  BasicGroupElement<Other> cast() const;

  friend bool operator==(const BasicGroupElement& a, const BasicGroupElement& b) {
    return a.v_.size() == b.v_.size() && a.v_ == b.v_ && a.u_ == b.u_;
  }

 private:
  Vector v_;
  Scalar u_;
};

using GroupElement = BasicGroupElement<Rational>;
using GroupElementd = BasicGroupElement<double>;

template <typename Scalar>
template <typename Other>
BasicGroupElement<Other> BasicGroupElement<Scalar>::cast() const {
  Vec<Other> v(v_.size());
  for (Eigen::Index i = 0; i < v_.size(); ++i) {
    if constexpr (std::is_same_v<Other, double> && std::is_same_v<Scalar, Rational>) {
      v[i] = to_double(v_[i]);
    } else {
      v[i] = static_cast<Other>(v_[i]);
    }
  }
  if constexpr (std::is_same_v<Other, double> && std::is_same_v<Scalar, Rational>) {
    return {std::move(v), to_double(u_)};
  } else {
    return {std::move(v), static_cast<Other>(u_)};
  }
}

/// Group law (v, u)(v~, u~) = (v + v~, u + u~ + omega(v, v~) / 2).
template <typename Scalar>
BasicGroupElement<Scalar> mul(const BasicGroupElement<Scalar>& g, const BasicGroupElement<Scalar>& h) {
  require_same_dim(g.dim(), h.dim());
  return {g.v() + h.v(), g.u() + h.u() + omega(g.v(), h.v()) / Scalar(2)};
}

template <typename Scalar>
BasicGroupElement<Scalar> operator*(const BasicGroupElement<Scalar>& g, const BasicGroupElement<Scalar>& h) {
  return mul(g, h);
}

template <typename Scalar>
BasicGroupElement<Scalar> inv(const BasicGroupElement<Scalar>& g) {
  return {-g.v(), -g.u()};
}

/// (v, u)^n = (n v, n u) for every integer n.
template <typename Scalar>
BasicGroupElement<Scalar> pow(const BasicGroupElement<Scalar>& g, Integer n) {
  const Scalar s(n);
  return {g.v() * s, g.u() * s};
}

/// g h g^-1 h^-1, which always lies on the vertical axis.
template <typename Scalar>
BasicGroupElement<Scalar> commutator(const BasicGroupElement<Scalar>& g, const BasicGroupElement<Scalar>& h) {
  require_same_dim(g.dim(), h.dim());
  return {BasicGroupElement<Scalar>::Vector::Zero(g.v().size()), omega(g.v(), h.v())};
}

/// A point of the discrete group H. The center coordinate is stored doubled,
/// u2 = 2u, and must satisfy u2 = sum_i p_i q_i (mod 2).
class LatticeElement {
 public:
  explicit LatticeElement(int dim = 1);
  LatticeElement(IntVec v, Integer u2);

  static LatticeElement identity(int dim) { return LatticeElement(dim); }
  static LatticeElement x(int dim, int i);
  static LatticeElement y(int dim, int i);
  static LatticeElement z(int dim);

  /// Nullopt when g is not a lattice point.
  static std::optional<LatticeElement> from_group(const GroupElement& g);

  int dim() const { return static_cast<int>(v_.size() / 2); }
  const IntVec& v() const { return v_; }
  Integer u2() const { return u2_; }
  Rational u() const { return Rational(u2_, 2); }
  bool is_identity() const { return u2_ == 0 && v_.isZero(); }

  GroupElement to_group() const;

  friend bool operator==(const LatticeElement& a, const LatticeElement& b) {
    return a.v_.size() == b.v_.size() && a.v_ == b.v_ && a.u2_ == b.u2_;
  }
  /// Lexicographic on (v, u2).
  friend std::strong_ordering operator<=>(const LatticeElement& a, const LatticeElement& b);

 private:
  struct Unchecked {};
  LatticeElement(IntVec v, Integer u2, Unchecked) : v_(std::move(v)), u2_(u2) {}
  friend LatticeElement mul(const LatticeElement&, const LatticeElement&);
  friend LatticeElement inv(const LatticeElement&);
  friend LatticeElement pow(const LatticeElement&, Integer);
  friend LatticeElement commutator(const LatticeElement&, const LatticeElement&);

  IntVec v_;
  Integer u2_ = 0;
};

/// sum_i p_i q_i, whose parity fixes the admissible u2 values over v.
Integer parity_sum(const IntVec& v);

LatticeElement mul(const LatticeElement& g, const LatticeElement& h);
inline LatticeElement operator*(const LatticeElement& g, const LatticeElement& h) { return mul(g, h); }
LatticeElement inv(const LatticeElement& g);
LatticeElement pow(const LatticeElement& g, Integer n);
LatticeElement commutator(const LatticeElement& g, const LatticeElement& h);

struct LatticeElementHash {
  std::size_t operator()(const LatticeElement& g) const noexcept;
};

enum class GeneratorKind { X, Y, Z };

/// x_i, y_i (index 1..D) or the central z.
struct Generator {
  GeneratorKind kind = GeneratorKind::Z;
  int index = 1;
  friend bool operator==(const Generator&, const Generator&) = default;
};

struct Letter {
  Generator generator;
  Integer exponent = 1;
  friend bool operator==(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

LatticeElement generator_element(const Generator& gen, int dim);

/// Left-to-right product of generator powers; the empty word is the identity.
LatticeElement word_eval(const Word& word, int dim);

/// Parses "x1 y1 x1^-1 y1^-1"; the index may be omitted when D = 1 ("x y").
Word parse_word(std::string_view text);
std::string to_string(const Word& word);

/// Exponents of the unique factorization x_1^a_1..x_D^a_D y_1^b_1..y_D^b_D z^c.
struct NormalForm {
  IntVec a;
  IntVec b;
  Integer c = 0;
  int dim() const { return static_cast<int>(a.size()); }
  friend bool operator==(const NormalForm& l, const NormalForm& r) {
    return l.a == r.a && l.b == r.b && l.c == r.c;
  }
};

NormalForm normal_form(const LatticeElement& g);
LatticeElement eval_normal_form(const NormalForm& nf);
Word to_word(const NormalForm& nf);

}  // namespace heis
