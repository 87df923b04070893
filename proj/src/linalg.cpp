#include "heis/linalg.hpp"

#include <numeric>

#include "heis/error.hpp"

namespace heis {

RowEchelon rref(RatMat m) {
  RowEchelon out;
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = r; i < rows; ++i) {
      if (m(i, c) != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    m.row(r).swap(m.row(piv));
    const Rational scale = m(r, c);
    for (Eigen::Index j = c; j < cols; ++j) m(r, j) /= scale;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Rational f = m(i, c);
      for (Eigen::Index j = c; j < cols; ++j) m(i, j) -= f * m(r, j);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.rows = m.topRows(r);
  return out;
}

std::optional<RatVec> solve_in_row_space(const RatMat& basis_rows, const RatVec& v) {
  require_same_dim(basis_rows.cols(), v.size());
  const Eigen::Index k = basis_rows.rows();
  const Eigen::Index n = v.size();
  // Solve basis^T c = v via elimination on the augmented system.
  RatMat aug(n, k + 1);
  aug.leftCols(k) = basis_rows.transpose();
  aug.col(k) = v;
  RowEchelon e = rref(aug);
  for (Eigen::Index p : e.pivots) {
    if (p == k) return std::nullopt;
  }
  RatVec c = RatVec::Zero(k);
  for (Eigen::Index i = 0; i < e.rank(); ++i) c[e.pivots[i]] = e.rows(i, k);
  if (basis_rows.transpose() * c != v) return std::nullopt;
  return c;
}

RatMat inverse(const RatMat& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::DimensionMismatch, "inverse of non-square matrix");
  const Eigen::Index n = m.rows();
  RatMat aug(n, 2 * n);
  aug.leftCols(n) = m;
  aug.rightCols(n) = RatMat::Identity(n, n);
  RowEchelon e = rref(aug);
  if (e.rank() != n || (n > 0 && e.pivots.back() >= n)) {
    throw Error(ErrorKind::InvalidArgument, "singular matrix");
  }
  return e.rows.rightCols(n);
}

IntVec primitive_integer(const RatVec& v) {
  using boost::multiprecision::mpz_int;
  mpz_int l = 1;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    mpz_int d = boost::multiprecision::denominator(v[i]);
    l = boost::multiprecision::lcm(l, d);
  }
  std::vector<mpz_int> ints(v.size());
  mpz_int g = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    Rational s = v[i] * Rational(l);
    ints[i] = boost::multiprecision::numerator(s);
    g = boost::multiprecision::gcd(g, ints[i]);
  }
  IntVec out = IntVec::Zero(v.size());
  if (g == 0) return out;
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = floor_to_integer(Rational(ints[i] / g));
  return out;
}

RatMat stack_rows(const std::vector<RatVec>& rows, Eigen::Index cols) {
  RatMat m(static_cast<Eigen::Index>(rows.size()), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require_same_dim(rows[i].size(), cols);
    m.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  }
  return m;
}

}  // namespace heis
