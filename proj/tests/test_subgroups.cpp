#include <gtest/gtest.h>

#include "heis/subgroups.hpp"
#include "heis/verify.hpp"

using namespace heis;

namespace {

SubspaceSpec span(std::vector<IntVec> rows) {
  std::vector<RatVec> r;
  for (const IntVec& v : rows) r.push_back(to_rational(v));
  return SubspaceSpec(Ambient::Group, static_cast<int>((rows.front().size() - 1) / 2), r);
}

}  // namespace

TEST(Subgroups, NamedExamples) {
  EXPECT_EQ(classify_subspace(span({IntVec{{0, 0, 1}}})).tag, SubgroupTag::Vertical);
  EXPECT_EQ(classify_subspace(span({IntVec{{1, 0, 0}}})).tag, SubgroupTag::Horizontal);
  EXPECT_EQ(classify_subspace(span({IntVec{{1, 0, 1}}})).tag, SubgroupTag::Inclined);
  const SubgroupClass plane = classify_subspace(span({IntVec{{1, 0, 0}}, IntVec{{0, 1, 0}}}));
  EXPECT_EQ(plane.tag, SubgroupTag::NotASubgroup);
  ASSERT_TRUE(plane.witness);
  EXPECT_FALSE(plane.contains(plane.witness->first * plane.witness->second));
  // Lagrangian planes in D = 2 are horizontal subgroups.
  EXPECT_EQ(classify_subspace(span({IntVec{{1, 0, 0, 0, 0}}, IntVec{{0, 1, 0, 0, 0}}})).tag,
            SubgroupTag::Horizontal);
  EXPECT_EQ(classify_subspace(span({IntVec{{1, 0, 0, 0, 0}}, IntVec{{0, 0, 1, 0, 0}}})).tag,
            SubgroupTag::NotASubgroup);
}

TEST(Subgroups, NormalityAndHomogeneity) {
  const SubgroupClass vertical = classify_subspace(span({IntVec{{1, 2, 0}}, IntVec{{0, 0, 1}}}));
  EXPECT_TRUE(is_normal(vertical));
  EXPECT_TRUE(is_homogeneous(vertical));
  const SubgroupClass inclined = classify_subspace(span({IntVec{{1, 0, 1}}}));
  EXPECT_FALSE(is_normal(inclined));
  EXPECT_FALSE(is_homogeneous(inclined));
  const SubgroupClass horizontal = classify_subspace(span({IntVec{{0, 1, 0}}}));
  EXPECT_FALSE(is_normal(horizontal));
  EXPECT_TRUE(is_homogeneous(horizontal));
}

TEST(Subgroups, GroupSpan) {
  const SubgroupClass h = group_span({LatticeElement::x(1, 1).to_group(), LatticeElement::y(1, 1).to_group()});
  EXPECT_EQ(h.subspace, SubspaceSpec::whole(Ambient::Group, 1));
  const SubgroupClass line = group_span({LatticeElement::x(1, 1).to_group()});
  EXPECT_EQ(line.tag, SubgroupTag::Horizontal);
  EXPECT_EQ(line.subspace.rank(), 1);
}

TEST(Subgroups, AgreesWithBruteForceClosure) {
  Sampler rng(2);
  for (int i = 0; i < 300; ++i) {
    const int d = 1 + i % 2;
    std::vector<IntVec> rows;
    for (int r = 0, k = 1 + i % 3; r < k; ++r) rows.push_back(rng.integer_vector(2 * d + 1, 2));
    bool zero = true;
    for (const IntVec& r : rows) zero = zero && r.isZero();
    if (zero) continue;
    const SubspaceSpec s = span(rows);
    EXPECT_EQ(classify_subspace(s).tag, brute_force_class(s));
  }
}

TEST(Subgroups, RationalDirections) {
  EXPECT_EQ(rational_directions(1, 1, 1).size(), 4u);
  EXPECT_EQ(rational_directions(1, 1, 3).size(), 16u);
  EXPECT_EQ(rational_directions(2, 1, 1).size(), 40u);
  const auto lines = rational_directions(1, 1, 2);
  EXPECT_EQ(lines.size(), 8u);
  EXPECT_EQ(lines.front().V(), SubspaceSpec(Ambient::Plane, 1, std::vector<RatVec>{to_rational(IntVec{{0, 1}})}));
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) EXPECT_FALSE(lines[i] == lines[j]);
  }
}

TEST(Subgroups, ProjectorIsOrthogonal) {
  const VerticalGroup G = VerticalGroup::from_integer_basis(2, {IntVec{{1, 2, 0, -1}}, IntVec{{0, 1, 1, 3}}});
  const RatMat& P = G.projector();
  EXPECT_EQ(P * P, P);
  EXPECT_EQ(P.transpose(), P);
  const RatVec v = to_rational(IntVec{{3, -1, 2, 5}});
  EXPECT_EQ(G.off_squared(v) + G.along_squared(v), v.squaredNorm());
}

TEST(Subgroups, GroupSpanContainsSampledWords) {
  Sampler rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<GroupElement> gens;
    for (int i = 0, n = 1 + trial % 3; i < n; ++i) {
      gens.emplace_back(to_rational(rng.integer_vector(2, 2)), Rational(rng.integer(-2, 2), 2));
    }
    const SubgroupClass span = group_span(gens);
    for (int w = 0; w < 20; ++w) {
      GroupElement g(1);
      for (int len = static_cast<int>(rng.integer(0, 8)); len > 0; --len) {
        const GroupElement& h = gens[static_cast<std::size_t>(rng.integer(0, static_cast<Integer>(gens.size()) - 1))];
        g = g * pow(h, rng.integer(-3, 3));
      }
      EXPECT_TRUE(span.contains(g));
    }
  }
}
