// One PASS/FAIL line per acceptance criterion; exit status 0 only when all pass.
#include <array>
#include <chrono>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <string>

#include "heis/verify.hpp"

namespace {

constexpr std::uint64_t kSeed = 7;

struct Limit {
  int criterion;
  double seconds;
};

// Wall-time ceilings per criterion.
constexpr std::array<Limit, 10> kLimits{{{1, 10.0},
                                         {2, 1.0},
                                         {3, 10.0},
                                         {4, 30.0},
                                         {5, 30.0},
                                         {6, 60.0},
                                         {7, 5.0},
                                         {8, 600.0},
                                         {9, 300.0},
                                         {10, 600.0}}};

std::string capture(const std::string& command, int& status) {
  std::string out;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf;
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  status = pclose(pipe);
  return out;
}

bool report(const heis::CheckResult& r, double limit) {
  const bool pass = r.pass && r.seconds < limit;
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << std::setw(2) << r.criterion << ": " << r.name
            << "  [cases=" << r.cases << " failures=" << r.failures << " time=" << std::fixed << std::setprecision(2)
            << r.seconds << "s limit=" << std::setprecision(0) << limit << "s]" << std::defaultfloat;
  if (!r.detail.empty()) std::cout << "  " << r.detail;
  std::cout << std::endl;
  return pass;
}

}  // namespace

int main() {
  using namespace heis;
  bool all = true;
  const std::vector<CheckResult> results = run_property_suite(kSeed);
  for (std::size_t i = 0; i < results.size(); ++i) all = report(results[i], kLimits[i].seconds) && all;

  const std::string command = std::string("\"") + HEIS_EXE + "\" verify --seed 7";
  const auto start = std::chrono::steady_clock::now();
  int s1 = 0, s2 = 0;
  const std::string first = capture(command, s1);
  const std::string second = capture(command, s2);
  CheckResult det;
  det.criterion = 11;
  det.name = "determinism: two runs of `heis verify --seed 7` are byte-identical";
  det.cases = 1;
  det.pass = !first.empty() && first == second && s1 == 0 && s2 == 0;
  det.failures = det.pass ? 0 : 1;
  det.detail = std::to_string(first.size()) + " bytes per run, exit statuses " + std::to_string(s1) + "/" +
               std::to_string(s2);
  det.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  all = report(det, 3600.0) && all;

  std::cout << (all ? "ALL PASS" : "SOME FAILED") << std::endl;
  return all ? 0 : 1;
}
