#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "heis/io.hpp"
#include "heis/verify.hpp"

using namespace heis;

TEST(Io, ElementSyntax) {
  const LatticeElement g = parse_lattice("[1,-2|4]");
  EXPECT_EQ(g, LatticeElement(IntVec{{1, -2}}, 4));
  EXPECT_EQ(format_lattice(g), "[1,-2|4]");
  EXPECT_EQ(parse_group("[1/2,0|3]").u(), Rational(3, 2));
  EXPECT_EQ(format_group(parse_group("[1/2,0|3/5]")), "[1/2,0|3/5]");
  EXPECT_THROW(parse_lattice("[1,1|0]"), Error);
  EXPECT_THROW(parse_lattice("1,1,0"), Error);
  EXPECT_THROW(parse_lattice("[1|0]"), Error);
  EXPECT_TRUE(parse_basis("none").empty());
  EXPECT_EQ(parse_basis("1,0;0,1").size(), 2u);
}

TEST(Io, SystemRoundTrip) {
  for (const SubshiftSystem& s : {three_dot(), full_shift(), fixed_point(), determined_direction().as_generic()}) {
    const SubshiftSystem back = system_from_json(system_json(s));
    EXPECT_EQ(system_json(back), system_json(s));
  }
  std::ifstream f(std::string(HEIS_DATA_DIR) + "/threedot.json");
  const SubshiftSystem file = system_from_json(Json::parse(f));
  EXPECT_EQ(system_json(file), system_json(three_dot()));
}

TEST(Io, ErrorsCarryFieldPaths) {
  auto path_of = [](const std::string& text) {
    try {
      system_from_json(Json::parse(text));
    } catch (const Error& e) {
      return e.path();
    }
    return std::string("no error");
  };
  EXPECT_EQ(path_of(R"({"D":1,"constraints":[{"support":[[0,0,0],[1,0,1]]}]})"), "constraints[0].support[1]");
  EXPECT_EQ(path_of(R"({"D":1,"kind":"linear3","constraints":[]})"), "kind");
  EXPECT_EQ(path_of(R"({"D":1,"constraints":[{"support":[[0,0,0]],"allowed":[["2"]]}]})"),
            "constraints[0].allowed[0]");
  EXPECT_EQ(path_of(R"({"D":1,"constraints":[{}]})"), "constraints[0].support");
}

TEST(Io, VerdictRoundTrip) {
  EngineCache cache(three_dot());
  const VerticalGroup diag = VerticalGroup::from_integer_basis(1, {IntVec{{1, 1}}});
  const std::vector<RatVec> basis{to_rational(IntVec{{1, 1}})};
  const ExpansivenessVerdict cert = certify_expansive(diag, cache);
  const Json j = expansiveness_json(cert, three_dot(), basis);
  const ExpansivenessVerdict back = expansiveness_from_json(Json::parse(j.dump()));
  EXPECT_EQ(expansiveness_json(back, three_dot(), basis).at("certificate"), j.at("certificate"));
  EXPECT_TRUE(recheck_certificate(back, diag, three_dot()));

  const Direction axis = Direction::exact(VerticalGroup::axis(1));
  const ExpansivenessVerdict ev = nonexpansive_evidence(axis, cache, EvidenceBudget{Rational(2), 3, 8});
  const ExpansivenessVerdict ev_back = expansiveness_from_json(expansiveness_json(ev, three_dot(), {}));
  EXPECT_TRUE(verify_evidence(ev_back, axis, three_dot()));
}

TEST(Io, ScanCsv) {
  const ScanReport r = scan_directions(fixed_point(), {1}, 1);
  std::istringstream csv(scan_csv(r, false));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "V,verdict,t,r,window");
  std::size_t rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
    EXPECT_NE(line.find(",Certified,"), std::string::npos);
  }
  EXPECT_EQ(rows, 4u);
  EXPECT_EQ(scan_summary_json(r, {1}, 1).at("summary").at("certified"), 4);
}
