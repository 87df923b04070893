#include "heis/group.hpp"

#include <cctype>
#include <sstream>

namespace heis {

namespace {

bool parity_ok(const IntVec& v, Integer u2) {
  return ((u2 - parity_sum(v)) % 2) == 0;
}

void check_shape(const IntVec& v) {
  if (v.size() == 0 || v.size() % 2 != 0) {
    throw Error(ErrorKind::DimensionMismatch, "horizontal part must have length 2D with D >= 1");
  }
}

void check_index(int dim, int i) {
  if (i < 1 || i > dim) {
    throw Error(ErrorKind::InvalidArgument,
                "generator index " + std::to_string(i) + " outside 1.." + std::to_string(dim));
  }
}

}  // namespace

Integer parity_sum(const IntVec& v) {
  const Eigen::Index d = v.size() / 2;
  return v.head(d).dot(v.tail(d));
}

LatticeElement::LatticeElement(int dim) : v_(IntVec::Zero(2 * dim)), u2_(0) {
  if (dim < 1) throw Error(ErrorKind::InvalidArgument, "dimension D must be >= 1");
}

LatticeElement::LatticeElement(IntVec v, Integer u2) : v_(std::move(v)), u2_(u2) {
  check_shape(v_);
  if (!parity_ok(v_, u2_)) {
    throw Error(ErrorKind::ParityViolation,
                "u2 = " + std::to_string(u2_) + " violates u2 = sum p_i q_i (mod 2)");
  }
}

LatticeElement LatticeElement::x(int dim, int i) {
  check_index(dim, i);
  IntVec v = IntVec::Zero(2 * dim);
  v[i - 1] = 1;
  return {std::move(v), 0};
}

LatticeElement LatticeElement::y(int dim, int i) {
  check_index(dim, i);
  IntVec v = IntVec::Zero(2 * dim);
  v[dim + i - 1] = 1;
  return {std::move(v), 0};
}

LatticeElement LatticeElement::z(int dim) { return {IntVec::Zero(2 * dim), 2}; }

std::optional<LatticeElement> LatticeElement::from_group(const GroupElement& g) {
  IntVec v(g.v().size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (boost::multiprecision::denominator(g.v()[i]) != 1) return std::nullopt;
    v[i] = floor_to_integer(g.v()[i]);
  }
  Rational u2 = g.u() * 2;
  if (boost::multiprecision::denominator(u2) != 1) return std::nullopt;
  Integer su2 = floor_to_integer(u2);
  if (!parity_ok(v, su2)) return std::nullopt;
  return LatticeElement(std::move(v), su2);
}

GroupElement LatticeElement::to_group() const { return {to_rational(v_), u()}; }

std::strong_ordering operator<=>(const LatticeElement& a, const LatticeElement& b) {
  if (auto c = a.v_.size() <=> b.v_.size(); c != 0) return c;
  for (Eigen::Index i = 0; i < a.v_.size(); ++i) {
    if (auto c = a.v_[i] <=> b.v_[i]; c != 0) return c;
  }
  return a.u2_ <=> b.u2_;
}

LatticeElement mul(const LatticeElement& g, const LatticeElement& h) {
  require_same_dim(g.dim(), h.dim());
  // 2 * (u + u~ + omega / 2)
  return {g.v_ + h.v_, g.u2_ + h.u2_ + omega(g.v_, h.v_), LatticeElement::Unchecked{}};
}

LatticeElement inv(const LatticeElement& g) { return {-g.v_, -g.u2_, LatticeElement::Unchecked{}}; }

LatticeElement pow(const LatticeElement& g, Integer n) {
  return {g.v_ * n, g.u2_ * n, LatticeElement::Unchecked{}};
}

LatticeElement commutator(const LatticeElement& g, const LatticeElement& h) {
  require_same_dim(g.dim(), h.dim());
  return {IntVec::Zero(g.v_.size()), 2 * omega(g.v_, h.v_), LatticeElement::Unchecked{}};
}

std::size_t LatticeElementHash::operator()(const LatticeElement& g) const noexcept {
  std::size_t h = std::hash<Integer>{}(g.u2());
  for (Eigen::Index i = 0; i < g.v().size(); ++i) {
    h ^= std::hash<Integer>{}(g.v()[i]) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

LatticeElement generator_element(const Generator& gen, int dim) {
  switch (gen.kind) {
    case GeneratorKind::X: return LatticeElement::x(dim, gen.index);
    case GeneratorKind::Y: return LatticeElement::y(dim, gen.index);
    case GeneratorKind::Z: return LatticeElement::z(dim);
  }
  return LatticeElement(dim);
}

LatticeElement word_eval(const Word& word, int dim) {
  LatticeElement acc(dim);
  for (const Letter& letter : word) {
    acc = acc * pow(generator_element(letter.generator, dim), letter.exponent);
  }
  return acc;
}

Word parse_word(std::string_view text) {
  Word word;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorKind::Parse, "malformed word '" + std::string(text) + "': " + why);
  };
  auto read_int = [&](bool allow_sign) -> std::optional<Integer> {
    std::size_t start = i;
    if (allow_sign && i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
    std::size_t digits = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == digits) {
      i = start;
      return std::nullopt;
    }
    return std::stoll(std::string(text.substr(start, i - start)));
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == '*' || c == '.') {
      ++i;
      continue;
    }
    Letter letter;
    switch (c) {
      case 'x': letter.generator.kind = GeneratorKind::X; break;
      case 'y': letter.generator.kind = GeneratorKind::Y; break;
      case 'z': letter.generator.kind = GeneratorKind::Z; break;
      default: fail(std::string("unexpected character '") + c + "'");
    }
    ++i;
    if (auto idx = read_int(false)) {
      if (letter.generator.kind == GeneratorKind::Z && *idx != 1) fail("z takes no index");
      letter.generator.index = static_cast<int>(*idx);
    }
    if (i < text.size() && text[i] == '^') {
      ++i;
      auto e = read_int(true);
      if (!e) fail("missing exponent after '^'");
      letter.exponent = *e;
    }
    word.push_back(letter);
  }
  return word;
}

std::string to_string(const Word& word) {
  std::ostringstream out;
  bool first = true;
  for (const Letter& l : word) {
    if (!first) out << ' ';
    first = false;
    switch (l.generator.kind) {
      case GeneratorKind::X: out << 'x' << l.generator.index; break;
      case GeneratorKind::Y: out << 'y' << l.generator.index; break;
      case GeneratorKind::Z: out << 'z'; break;
    }
    if (l.exponent != 1) out << '^' << l.exponent;
  }
  return out.str();
}

NormalForm normal_form(const LatticeElement& g) {
  const int d = g.dim();
  NormalForm nf;
  nf.a = g.v().head(d);
  nf.b = g.v().tail(d);
  // u = (1/2) sum a_i b_i + c, so c = (u2 - sum a_i b_i) / 2, an integer by parity.
  nf.c = (g.u2() - nf.a.dot(nf.b)) / 2;
  return nf;
}

LatticeElement eval_normal_form(const NormalForm& nf) {
  require_same_dim(nf.a.size(), nf.b.size());
  IntVec v(2 * nf.a.size());
  v << nf.a, nf.b;
  return {std::move(v), nf.a.dot(nf.b) + 2 * nf.c};
}

Word to_word(const NormalForm& nf) {
  Word w;
  for (int i = 0; i < nf.dim(); ++i) {
    if (nf.a[i] != 0) w.push_back({{GeneratorKind::X, i + 1}, nf.a[i]});
  }
  for (int i = 0; i < nf.dim(); ++i) {
    if (nf.b[i] != 0) w.push_back({{GeneratorKind::Y, i + 1}, nf.b[i]});
  }
  if (nf.c != 0) w.push_back({{GeneratorKind::Z, 1}, nf.c});
  return w;
}

}  // namespace heis
