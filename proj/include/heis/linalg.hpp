#pragma once

#include <optional>
#include <vector>

#include "heis/rational.hpp"

namespace heis {

/// Reduced row-echelon form over Q with zero rows dropped. The result is
/// unique for a given row space, which makes it a canonical basis.
struct RowEchelon {
  RatMat rows;  // rank x n
  std::vector<Eigen::Index> pivots;
  Eigen::Index rank() const { return rows.rows(); }
};

RowEchelon rref(RatMat m);

/// Coefficients c with c^T * basis_rows = v, or nullopt if v is outside the row space.
std::optional<RatVec> solve_in_row_space(const RatMat& basis_rows, const RatVec& v);

/// Exact inverse of a nonsingular square matrix by Gauss-Jordan elimination.
RatMat inverse(const RatMat& m);

/// Scales v to the primitive integer vector on the same ray.
IntVec primitive_integer(const RatVec& v);

RatMat stack_rows(const std::vector<RatVec>& rows, Eigen::Index cols);

}  // namespace heis
