#include "heis/subgroups.hpp"

#include <algorithm>
#include <set>

namespace heis {

namespace {

RatMat drop_last_column(const RatMat& m) { return m.leftCols(m.cols() - 1); }

bool lex_less(const RatMat& a, const RatMat& b) {
  if (a.rows() != b.rows()) return a.rows() < b.rows();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (a(i, j) != b(i, j)) return a(i, j) < b(i, j);
    }
  }
  return false;
}

Integer height_of(const std::vector<IntVec>& basis) {
  Integer h = 0;
  for (const IntVec& v : basis) h = std::max(h, v.cwiseAbs().maxCoeff());
  return h;
}

}  // namespace

SubspaceSpec::SubspaceSpec(Ambient ambient, int dim, const RatMat& spanning_rows)
    : ambient_(ambient), dim_(dim) {
  if (dim < 1) throw Error(ErrorKind::InvalidArgument, "dimension D must be >= 1");
  if (spanning_rows.rows() > 0) require_same_dim(spanning_rows.cols(), ambient_size());
  RatMat m = spanning_rows.rows() > 0 ? spanning_rows : RatMat(0, ambient_size());
  basis_ = rref(std::move(m)).rows;
}

SubspaceSpec::SubspaceSpec(Ambient ambient, int dim, const std::vector<RatVec>& spanning)
    : SubspaceSpec(ambient, dim,
                   stack_rows(spanning, ambient == Ambient::Plane ? 2 * dim : 2 * dim + 1)) {}

SubspaceSpec SubspaceSpec::zero(Ambient ambient, int dim) {
  return SubspaceSpec(ambient, dim, std::vector<RatVec>{});
}

SubspaceSpec SubspaceSpec::whole(Ambient ambient, int dim) {
  const Eigen::Index n = ambient == Ambient::Plane ? 2 * dim : 2 * dim + 1;
  return SubspaceSpec(ambient, dim, RatMat(RatMat::Identity(n, n)));
}

bool SubspaceSpec::contains(const RatVec& x) const {
  require_same_dim(x.size(), ambient_size());
  if (x.isZero()) return true;
  if (rank() == 0) return false;
  // Reduce x against the (reduced) pivots; the remainder vanishes iff x is in the span.
  RatVec r = x;
  for (Eigen::Index i = 0; i < basis_.rows(); ++i) {
    Eigen::Index piv = 0;
    while (basis_(i, piv) == 0) ++piv;
    if (r[piv] != 0) r -= r[piv] * basis_.row(i).transpose();
  }
  return r.isZero();
}

bool SubspaceSpec::contains(const SubspaceSpec& other) const {
  for (Eigen::Index i = 0; i < other.rank(); ++i) {
    if (!contains(other.basis_vector(i))) return false;
  }
  return true;
}

SubspaceSpec SubspaceSpec::sum(const SubspaceSpec& other) const {
  require_same_dim(ambient_size(), other.ambient_size());
  RatMat m(rank() + other.rank(), ambient_size());
  if (rank() > 0) m.topRows(rank()) = basis_;
  if (other.rank() > 0) m.bottomRows(other.rank()) = other.basis_;
  return SubspaceSpec(ambient_, dim_, m);
}

std::vector<IntVec> SubspaceSpec::integer_basis() const {
  std::vector<IntVec> out;
  for (Eigen::Index i = 0; i < rank(); ++i) out.push_back(primitive_integer(basis_vector(i)));
  return out;
}

bool operator<(const SubspaceSpec& a, const SubspaceSpec& b) {
  if (a.ambient_ != b.ambient_) return a.ambient_ < b.ambient_;
  if (a.dim_ != b.dim_) return a.dim_ < b.dim_;
  return lex_less(a.basis_, b.basis_);
}

RatVec as_vector(const GroupElement& g) {
  RatVec x(g.v().size() + 1);
  x << g.v(), g.u();
  return x;
}

GroupElement as_element(const RatVec& x) {
  if (x.size() < 3 || x.size() % 2 == 0) {
    throw Error(ErrorKind::DimensionMismatch, "group vectors have length 2D + 1");
  }
  return {x.head(x.size() - 1), x[x.size() - 1]};
}

VerticalGroup::VerticalGroup(SubspaceSpec plane) : plane_(std::move(plane)) {
  if (plane_.ambient() != Ambient::Plane) {
    throw Error(ErrorKind::InvalidArgument, "a vertical group is described by a subspace of R^{2D}");
  }
  const Eigen::Index n = plane_.ambient_size();
  if (plane_.rank() == 0) {
    projector_ = RatMat::Zero(n, n);
  } else {
    const RatMat& b = plane_.basis();
    projector_ = b.transpose() * inverse(b * b.transpose()) * b;
  }
}

VerticalGroup VerticalGroup::axis(int dim) { return VerticalGroup(SubspaceSpec::zero(Ambient::Plane, dim)); }

VerticalGroup VerticalGroup::from_integer_basis(int dim, const std::vector<IntVec>& basis) {
  std::vector<RatVec> rows;
  for (const IntVec& v : basis) rows.push_back(to_rational(v));
  return VerticalGroup(SubspaceSpec(Ambient::Plane, dim, rows));
}

Rational VerticalGroup::off_squared(const RatVec& v) const {
  RatVec r = v - projector_ * v;
  return r.squaredNorm();
}

Rational VerticalGroup::along_squared(const RatVec& v) const { return (projector_ * v).squaredNorm(); }

std::string to_string(SubgroupTag tag) {
  switch (tag) {
    case SubgroupTag::Horizontal: return "Horizontal";
    case SubgroupTag::Vertical: return "Vertical";
    case SubgroupTag::Inclined: return "Inclined";
    case SubgroupTag::NotASubgroup: return "NotASubgroup";
  }
  return "?";
}

bool is_isotropic(const SubspaceSpec& plane) {
  if (plane.ambient() != Ambient::Plane) {
    throw Error(ErrorKind::InvalidArgument, "isotropy is defined for subspaces of R^{2D}");
  }
  for (Eigen::Index i = 0; i < plane.rank(); ++i) {
    for (Eigen::Index j = i + 1; j < plane.rank(); ++j) {
      if (omega(plane.basis().row(i).transpose(), plane.basis().row(j).transpose()) != 0) return false;
    }
  }
  return true;
}

SubgroupClass classify_subspace(const SubspaceSpec& subspace) {
  if (subspace.ambient() != Ambient::Group) {
    throw Error(ErrorKind::InvalidArgument, "classification needs a subspace of R^{2D+1}");
  }
  const int d = subspace.dim();
  const Eigen::Index n = subspace.ambient_size();
  SubspaceSpec projection(Ambient::Plane, d,
                          subspace.rank() > 0 ? drop_last_column(subspace.basis()) : RatMat(0, n - 1));
  SubgroupClass out{SubgroupTag::NotASubgroup, subspace, projection, std::nullopt};

  RatVec axis = RatVec::Zero(n);
  axis[n - 1] = 1;
  if (subspace.contains(axis)) {
    out.tag = SubgroupTag::Vertical;
    return out;
  }
  const bool flat = subspace.rank() == 0 || subspace.basis().col(n - 1).isZero();
  if (is_isotropic(projection)) {
    out.tag = flat ? SubgroupTag::Horizontal : SubgroupTag::Inclined;
    return out;
  }
  for (Eigen::Index i = 0; i < subspace.rank(); ++i) {
    for (Eigen::Index j = i + 1; j < subspace.rank(); ++j) {
      GroupElement g = as_element(subspace.basis_vector(i));
      GroupElement h = as_element(subspace.basis_vector(j));
      if (omega(g.v(), h.v()) != 0) {
        out.witness = std::make_pair(g, h);
        return out;
      }
    }
  }
  return out;
}

SubgroupClass group_span(const std::vector<GroupElement>& gens) {
  if (gens.empty()) throw Error(ErrorKind::InvalidArgument, "group_span needs at least one generator");
  const int d = gens.front().dim();
  std::vector<RatVec> rows;
  for (const GroupElement& g : gens) {
    require_same_dim(g.dim(), d);
    rows.push_back(as_vector(g));
  }
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      if (omega(gens[i].v(), gens[j].v()) != 0) {
        // A nonzero commutator puts a subgroup of the axis inside, hence the whole axis.
        RatVec axis = RatVec::Zero(2 * d + 1);
        axis[2 * d] = 1;
        rows.push_back(axis);
        return classify_subspace(SubspaceSpec(Ambient::Group, d, rows));
      }
    }
  }
  return classify_subspace(SubspaceSpec(Ambient::Group, d, rows));
}

bool is_normal(const SubgroupClass& s) {
  if (s.tag == SubgroupTag::NotASubgroup) throw Error(ErrorKind::NotASubgroup, "not a subgroup");
  return s.tag == SubgroupTag::Vertical;
}

bool is_homogeneous(const SubgroupClass& s) {
  if (s.tag == SubgroupTag::NotASubgroup) throw Error(ErrorKind::NotASubgroup, "not a subgroup");
  return s.tag == SubgroupTag::Vertical || s.tag == SubgroupTag::Horizontal;
}

std::vector<VerticalGroup> rational_directions(int dim, int k, int height) {
  if (dim < 1) throw Error(ErrorKind::InvalidArgument, "dimension D must be >= 1");
  if (k < 1 || k > 2 * dim - 1) {
    throw Error(ErrorKind::InvalidArgument,
                "direction dimension k must lie in 1.." + std::to_string(2 * dim - 1));
  }
  if (height <= 0) return {};
  const Eigen::Index n = 2 * dim;

  std::set<SubspaceSpec> lines;
  IntVec v = IntVec::Constant(n, -height);
  while (true) {
    if (!v.isZero()) lines.insert(SubspaceSpec(Ambient::Plane, dim, std::vector<RatVec>{to_rational(v)}));
    Eigen::Index i = 0;
    while (i < n && v[i] == height) v[i++] = -height;
    if (i == n) break;
    ++v[i];
  }

  std::set<SubspaceSpec> current = lines;
  for (int step = 1; step < k; ++step) {
    std::set<SubspaceSpec> next;
    for (const SubspaceSpec& s : current) {
      for (const SubspaceSpec& l : lines) {
        if (s.contains(l)) continue;
        next.insert(s.sum(l));
      }
    }
    current = std::move(next);
  }

  std::vector<SubspaceSpec> sorted(current.begin(), current.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const SubspaceSpec& a, const SubspaceSpec& b) {
    return height_of(a.integer_basis()) < height_of(b.integer_basis());
  });
  std::vector<VerticalGroup> out;
  out.reserve(sorted.size());
  for (SubspaceSpec& s : sorted) out.emplace_back(std::move(s));
  return out;
}

}  // namespace heis
