#pragma once

#include <Eigen/Core>

#include "heis/error.hpp"

namespace heis {

/// Standard symplectic form on R^{2D}: sum_i (p_i q~_i - q_i p~_i), with
/// coordinates ordered p_1..p_D, q_1..q_D.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar omega(const Eigen::MatrixBase<DerivedA>& v,
                                const Eigen::MatrixBase<DerivedB>& w) {
  require_same_dim(v.size(), w.size());
  if (v.size() % 2 != 0) {
    throw Error(ErrorKind::DimensionMismatch, "symplectic vectors need even length");
  }
  const Eigen::Index d = v.size() / 2;
  return v.head(d).dot(w.tail(d)) - v.tail(d).dot(w.head(d));
}

}  // namespace heis
