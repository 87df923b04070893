#include <gtest/gtest.h>

#include <cmath>

#include "heis/symdyn.hpp"

using namespace heis;

namespace {

std::vector<std::vector<Symbol>> brute_force_patterns(const Window& w, const SubshiftSystem& s) {
  std::vector<std::vector<Symbol>> out;
  const std::size_t n = w.size(), q = s.alphabet.size();
  std::vector<Symbol> values(n, 0);
  while (true) {
    if (locally_admissible(to_pattern(w, values), s)) out.push_back(values);
    std::size_t i = n;
    while (i > 0 && static_cast<std::size_t>(values[i - 1]) + 1 == q) values[--i] = 0;
    if (i == 0) break;
    ++values[i - 1];
  }
  return out;
}

}  // namespace

TEST(Symdyn, BuiltinsValidate) {
  EXPECT_NO_THROW(three_dot().validate());
  EXPECT_NO_THROW(full_shift().validate());
  EXPECT_NO_THROW(fixed_point().validate());
  EXPECT_NO_THROW(determined_direction().as_generic().validate());
  SubshiftSystem bad = three_dot();
  bad.alphabet = {"a", "b"};
  EXPECT_THROW(bad.validate(), Error);
}

TEST(Symdyn, CubeWindowSizes) {
  EXPECT_EQ(Window(WindowBox::cube(1, 1)).size(), 27u);
  EXPECT_EQ(Window(WindowBox::cube(1, 6)).size(), 13u * 13u * 13u);
  EXPECT_TRUE(WindowBox::cube(1, 1).contains(LatticeElement::y(1, 1) * LatticeElement::x(1, 1)));
}

TEST(Symdyn, PatternsMatchBruteForce) {
  const std::vector<LatticeElement> small = WindowBox{IntVec::Constant(1, 0), IntVec::Constant(1, 2),
                                                      IntVec::Constant(1, 0), IntVec::Constant(1, 1), 0, 1}
                                                .cells();
  const Window w(small);
  for (const SubshiftSystem& s : {three_dot(), three_dot().as_generic(), determined_direction(), full_shift()}) {
    EXPECT_EQ(admissible_patterns(w, s), brute_force_patterns(w, s)) << s.name;
  }
  const SolutionSpace space = solution_space(w, three_dot());
  EXPECT_EQ(std::size_t{1} << space.kernel_dim(), brute_force_patterns(w, three_dot()).size());
  EXPECT_THROW(admissible_patterns(Window(WindowBox::cube(1, 1)), full_shift()), Error);
}

TEST(Symdyn, InstancesUseLeftTranslatedSupport) {
  const Window w(std::vector<LatticeElement>{LatticeElement::identity(1), LatticeElement::x(1, 1),
                                             LatticeElement::y(1, 1)});
  const auto instances = constraint_instances(w, three_dot());
  ASSERT_EQ(instances.size(), 1u);
  EXPECT_EQ(instances[0].anchor, LatticeElement::identity(1));
  const Window up = w.translated(LatticeElement::y(1, 1));
  EXPECT_EQ(constraint_instances(up, three_dot()).size(), 1u);
}

TEST(Symdyn, ShiftActionAndMetric) {
  const LatticeElement x = LatticeElement::x(1, 1), y = LatticeElement::y(1, 1);
  Pattern p{{LatticeElement::identity(1), 0}, {x, 1}, {y, 0}};
  const Pattern shifted = shift_act(x, p);
  EXPECT_EQ(shifted.at(LatticeElement::identity(1)), 1);
  EXPECT_EQ(shifted.count(inv(x)), 1u);
  Pattern q = p;
  EXPECT_EQ(config_distance(p, q), 0.0);
  q[x] = 0;
  EXPECT_DOUBLE_EQ(config_distance(p, q), 0.5);
  q[LatticeElement::identity(1)] = 1;
  EXPECT_EQ(config_distance(p, q), 1.0);
  Pattern r = p;
  r[x * y] = 1;
  p[x * y] = 0;
  EXPECT_DOUBLE_EQ(config_distance(p, r), std::pow(2.0, -std::pow(17.0 / 4, 0.25)));
  EXPECT_DOUBLE_EQ(rho_sup(p, r, {LatticeElement::identity(1)}), config_distance(p, r));
}
