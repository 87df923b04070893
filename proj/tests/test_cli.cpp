#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace {

struct CliRun {
  int status;
  std::string out;
};

CliRun run(const std::string& args) {
  const std::string command = std::string("\"") + HEIS_EXE + "\" " + args + " 2>/dev/null";
  CliRun r{0, {}};
  FILE* pipe = popen(command.c_str(), "r");
  std::array<char, 4096> buf;
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

const std::string data = HEIS_DATA_DIR;

}  // namespace

TEST(Cli, NormOfCentralGenerator) {
  const CliRun r = run("norm \"[0,0|2]\"");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "1.0\n");
}

TEST(Cli, ClassifyAxis) {
  const CliRun r = run("classify --basis \"0,0,1\"");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("\"class\": \"Vertical\""), std::string::npos);
}

TEST(Cli, ScanFindsEvidence) {
  const CliRun r = run("scan --sys " + data + "/threedot.json --k 1 --height 3");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out.rfind("V,verdict,t,r,window,millis\n", 0), 0u);
  EXPECT_NE(r.out.find(",EvidenceNonexpansive,"), std::string::npos);
}

TEST(Cli, CodeVerdicts) {
  const std::string sys = "code --sys " + data + "/threedot.json --window 1 ";
  EXPECT_EQ(run(sys + "--A '[\"[0,0|0]\",\"[1,0|0]\"]' --B '[\"[0,1|0]\"]'").status, 0);
  const CliRun no = run(sys + "--A '[\"[0,0|0]\"]' --B '[\"[0,1|0]\"]'");
  EXPECT_EQ(no.status, 1);
  EXPECT_NE(no.out.find("NotForcedInWindow"), std::string::npos);
}

TEST(Cli, ExpansiveRoundTripsThroughRecheck) {
  const std::string path = testing::TempDir() + "heis_cli_verdict.json";
  EXPECT_EQ(run("expansive --sys " + data + "/threedot.json --V 1,1 --tmax 4 --out " + path).status, 0);
  const CliRun r = run("recheck " + path);
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("\"ok\""), std::string::npos);
  const std::string ev = testing::TempDir() + "heis_cli_evidence.json";
  EXPECT_EQ(run("expansive --sys " + data + "/threedot.json --V 0,1 --mode evidence --out " + ev).status, 0);
  EXPECT_EQ(run("recheck " + ev).status, 0);
}

TEST(Cli, UsageAndInputErrors) {
  EXPECT_EQ(run("").status, 2);
  EXPECT_EQ(run("frobnicate").status, 2);
  EXPECT_EQ(run("norm \"[1,1]\"").status, 2);
  EXPECT_EQ(run("sys validate '{\"D\":1,\"constraints\":[{\"support\":[[0,0,0],[1,0,1]]}]}'").status, 2);
  EXPECT_EQ(run("sys validate '{\"D\":1,'").status, 2);
  EXPECT_EQ(run("sys validate " + data + "/fullshift.json").status, 0);
  EXPECT_EQ(run("sys patterns " + data + "/fullshift.json --window 1").status, 1);
}

TEST(Cli, EnumerateAndApproximate) {
  const CliRun e = run("enum --V \"\" --t 1 --ubox 0,0");
  EXPECT_EQ(e.out, "[\"[-1,0|0]\",\"[0,-1|0]\",\"[0,0|0]\",\"[0,1|0]\",\"[1,0|0]\"]\n");
  const CliRun a = run("approx \"[1/3,2/3|1/5]\"");
  EXPECT_NE(a.out.find("\"element\":\"[0,1|0]\""), std::string::npos);
  const CliRun d = run("dist \"[1,0|0]\" \"[0,0|0]\"");
  EXPECT_NE(d.out.find("\"fourth_power\":\"1\""), std::string::npos);
}
