#include <gtest/gtest.h>

#include "heis/coding.hpp"
#include "heis/verify.hpp"

using namespace heis;

namespace {

const LatticeElement e = LatticeElement::identity(1);
const LatticeElement x = LatticeElement::x(1, 1);
const LatticeElement y = LatticeElement::y(1, 1);

}  // namespace

TEST(Coding, ThreeDotForcesTheThirdCell) {
  const Window w(WindowBox::cube(1, 1));
  const CodingVerdict v = weak_code_check({three_dot(), {e, x}, {y}, w});
  EXPECT_EQ(v.tag, CodingTag::Forces);
  const Window dots(std::vector<LatticeElement>{e, x, y});
  EXPECT_EQ(weak_code_check({three_dot(), {e, x}, {y}, dots}, Backend::Generic).tag, CodingTag::Forces);
  EXPECT_EQ(weak_code_check({three_dot(), {x}, {y}, dots}, Backend::Generic).tag, CodingTag::NotForcedInWindow);
}

TEST(Coding, WitnessIsAdmissibleAndDisagrees) {
  const Window w(WindowBox::cube(1, 1));
  for (Backend b : {Backend::Linear2, Backend::Generic}) {
    Caps caps;
    caps.generic_cells = 27;
    const CodingVerdict v = weak_code_check({three_dot(), {e}, {x}, w}, b, caps);
    ASSERT_EQ(v.tag, CodingTag::NotForcedInWindow);
    ASSERT_TRUE(v.witness);
    const Pattern p = to_pattern(w, v.witness->x), q = to_pattern(w, v.witness->y);
    EXPECT_TRUE(locally_admissible(p, three_dot()));
    EXPECT_TRUE(locally_admissible(q, three_dot()));
    EXPECT_EQ(p.at(e), q.at(e));
    EXPECT_NE(p.at(x), q.at(x));
  }
}

TEST(Coding, GenericCapIsEnforced) {
  EXPECT_THROW(weak_code_check({full_shift(), {e}, {x}, Window(WindowBox::cube(1, 1))}, Backend::Generic), Error);
}

TEST(Coding, ClosureUnderUnionsAndTranslates) {
  const Window w(WindowBox::cube(1, 2));
  const ClosureReport r = coding_closure_check(three_dot(), w, {e, x}, {y}, {x, x * x}, {x * y}, {inv(x), y});
  EXPECT_TRUE(r.ok);
}

TEST(Coding, CertificatesAndEvidenceOnThreeDot) {
  EngineCache cache(three_dot());
  const VerticalGroup diag = VerticalGroup::from_integer_basis(1, {IntVec{{1, 1}}});
  const ExpansivenessVerdict cert = certify_expansive(diag, cache);
  ASSERT_EQ(cert.tag, ExpansivenessTag::Certified);
  EXPECT_FALSE(cert.certificate.empty());
  EXPECT_TRUE(recheck_certificate(cert, diag, three_dot()));
  ExpansivenessVerdict tampered = cert;
  tampered.certificate.front().combination.pop_back();
  EXPECT_FALSE(recheck_certificate(tampered, diag, three_dot()));

  const VerticalGroup vertical = VerticalGroup::from_integer_basis(1, {IntVec{{0, 1}}});
  const ExpansivenessVerdict ev = nonexpansive_evidence(Direction::exact(vertical), cache);
  ASSERT_EQ(ev.tag, ExpansivenessTag::EvidenceNonexpansive);
  EXPECT_TRUE(verify_evidence(ev, Direction::exact(vertical), three_dot()));
  ExpansivenessVerdict broken = ev;
  broken.chain.back().witness.y = broken.chain.back().witness.x;
  EXPECT_FALSE(verify_evidence(broken, Direction::exact(vertical), three_dot()));
}

TEST(Coding, TrivialSystems) {
  const VerticalGroup line = VerticalGroup::from_integer_basis(1, {IntVec{{1, 2}}});
  EXPECT_EQ(certify_expansive(line, fixed_point()).tag, ExpansivenessTag::Certified);
  EXPECT_EQ(nonexpansive_evidence(Direction::exact(line), full_shift()).tag, ExpansivenessTag::EvidenceNonexpansive);
  EXPECT_NE(certify_expansive(line, full_shift()).tag, ExpansivenessTag::Certified);
}

TEST(Coding, ApproximateDirectionEvidence) {
  const Direction d = Direction::approximate(1, {Vec<double>{{1.0, 1.41421356}}});
  EXPECT_FALSE(d.is_exact());
  const ExpansivenessVerdict v = nonexpansive_evidence(d, full_shift());
  EXPECT_EQ(v.tag, ExpansivenessTag::EvidenceNonexpansive);
  EXPECT_TRUE(verify_evidence(v, d, full_shift()));
}

TEST(Coding, ScanIsDeterministicAcrossThreadCounts) {
  ScanBudget one, three;
  one.threads = 1;
  three.threads = 3;
  const ScanReport a = scan_directions(three_dot(), {0, 1}, 1, one);
  const ScanReport b = scan_directions(three_dot(), {0, 1}, 1, three);
  ASSERT_EQ(a.rows.size(), 5u);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].V, b.rows[i].V);
    EXPECT_EQ(a.rows[i].verdict, b.rows[i].verdict);
  }
  EXPECT_TRUE(a.summary.containment_consistent);
}
