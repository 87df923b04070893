#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "heis/group.hpp"
#include "heis/linalg.hpp"

namespace heis {

/// Which space a subspace lives in: R^{2D} (horizontal coordinates only) or
/// the full group R^{2D+1} with the center coordinate last.
enum class Ambient { Plane, Group };

/// A linear subspace with a canonical (reduced row-echelon) basis, so that
/// equal subspaces compare equal.
class SubspaceSpec {
 public:
  SubspaceSpec(Ambient ambient, int dim, const std::vector<RatVec>& spanning);
  SubspaceSpec(Ambient ambient, int dim, const RatMat& spanning_rows);

  static SubspaceSpec zero(Ambient ambient, int dim);
  static SubspaceSpec whole(Ambient ambient, int dim);

  Ambient ambient() const { return ambient_; }
  int dim() const { return dim_; }
  Eigen::Index ambient_size() const { return ambient_ == Ambient::Plane ? 2 * dim_ : 2 * dim_ + 1; }
  Eigen::Index rank() const { return basis_.rows(); }
  const RatMat& basis() const { return basis_; }
  RatVec basis_vector(Eigen::Index i) const { return basis_.row(i).transpose(); }

  bool contains(const RatVec& x) const;
  bool contains(const SubspaceSpec& other) const;
  SubspaceSpec sum(const SubspaceSpec& other) const;

  /// Basis vectors scaled to primitive integer vectors.
  std::vector<IntVec> integer_basis() const;

  friend bool operator==(const SubspaceSpec& a, const SubspaceSpec& b) {
    return a.ambient_ == b.ambient_ && a.dim_ == b.dim_ && a.basis_.rows() == b.basis_.rows() &&
           a.basis_ == b.basis_;
  }
  /// Total order on canonical bases; used for deterministic sorting.
  friend bool operator<(const SubspaceSpec& a, const SubspaceSpec& b);

 private:
  Ambient ambient_;
  int dim_;
  RatMat basis_;
};

RatVec as_vector(const GroupElement& g);
GroupElement as_element(const RatVec& x);  // x in R^{2D+1}

/// V x R: contains the axis, is normal, and is determined by V in R^{2D}.
class VerticalGroup {
 public:
  explicit VerticalGroup(SubspaceSpec plane);
  static VerticalGroup axis(int dim);
  static VerticalGroup from_integer_basis(int dim, const std::vector<IntVec>& basis);

  const SubspaceSpec& V() const { return plane_; }
  int dim() const { return plane_.dim(); }
  /// Dimension of V x R as a linear space.
  Eigen::Index dimension() const { return plane_.rank() + 1; }
  const RatMat& projector() const { return projector_; }

  RatVec project(const RatVec& v) const { return projector_ * v; }
  /// |v - proj_V v|^2
  Rational off_squared(const RatVec& v) const;
  /// |proj_V v|^2
  Rational along_squared(const RatVec& v) const;
  Rational off_squared(const IntVec& v) const { return off_squared(to_rational(v)); }
  Rational along_squared(const IntVec& v) const { return along_squared(to_rational(v)); }

  bool contains(const GroupElement& g) const { return plane_.contains(g.v()); }

  friend bool operator==(const VerticalGroup& a, const VerticalGroup& b) { return a.plane_ == b.plane_; }

 private:
  SubspaceSpec plane_;
  RatMat projector_;
};

enum class SubgroupTag { Horizontal, Vertical, Inclined, NotASubgroup };
std::string to_string(SubgroupTag tag);

struct SubgroupClass {
  SubgroupTag tag = SubgroupTag::NotASubgroup;
  SubspaceSpec subspace;    // in R^{2D+1}
  SubspaceSpec projection;  // pi(subspace) in R^{2D}
  /// For NotASubgroup: g, h in the subspace with g * h outside it.
  std::optional<std::pair<GroupElement, GroupElement>> witness;

  bool contains(const GroupElement& g) const { return subspace.contains(as_vector(g)); }
};

bool is_isotropic(const SubspaceSpec& plane);
SubgroupClass classify_subspace(const SubspaceSpec& subspace);
/// The smallest linear subgroup containing the generators.
SubgroupClass group_span(const std::vector<GroupElement>& gens);
bool is_normal(const SubgroupClass& s);
bool is_homogeneous(const SubgroupClass& s);

/// Every k-dimensional subspace V of R^{2D} spanned by integer vectors with
/// entries in [-height, height], deduplicated and sorted.
std::vector<VerticalGroup> rational_directions(int dim, int k, int height);

}  // namespace heis
