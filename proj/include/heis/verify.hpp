#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "heis/coding.hpp"
#include "heis/geometry.hpp"
#include "heis/subgroups.hpp"

namespace heis {

/// Deterministic generator for sampled property checks.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  Integer integer(Integer lo, Integer hi);
  Rational rational(Integer num_bound = 20, Integer den_bound = 12);
  Rational positive_rational(Integer num_bound = 20, Integer den_bound = 12);
  double real(double lo, double hi);
  RatVec rational_vector(Eigen::Index n, Integer num_bound = 20, Integer den_bound = 12);
  IntVec integer_vector(Eigen::Index n, Integer bound);
  GroupElement group(int dim);
  LatticeElement lattice(int dim, Integer bound = 20);
  /// A random vertical group spanned by k small integer vectors (k may be 0).
  VerticalGroup vertical(int dim, int k, Integer bound = 3);

 private:
  std::mt19937_64 engine_;
};

struct CheckResult {
  int criterion = 0;
  std::string name;
  bool pass = true;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string detail;
  double seconds = 0.0;
};

// Independent oracles.
GroupElement iterated_power(const GroupElement& g, Integer n);
/// Numerical minimum of d_CK(g, h) over h in V x R by sampling and compass search.
double sampled_vertical_distance(const GroupElement& g, const VerticalGroup& G, std::uint64_t seed);
/// Lattice points of the slab found by scanning a bounding box.
std::vector<LatticeElement> box_scan_slab(const ThickenedSlab& slab, Integer box, Integer u2_bound);
/// Classification from closure under mul and axis membership only.
SubgroupTag brute_force_class(const SubspaceSpec& s);

CheckResult check_algebra(std::uint64_t seed, std::size_t cases = 100000);
CheckResult check_words();
CheckResult check_norm_metric(std::uint64_t seed, std::size_t cases = 10000);
CheckResult check_vertical_distance(std::uint64_t seed, std::size_t cases = 100);
CheckResult check_set_algebra(std::uint64_t seed, std::size_t cases = 1000);
CheckResult check_lambda(Integer grid_denominator = 64);
CheckResult check_classification();
CheckResult check_coding_oracle(std::size_t max_cells = 14, std::size_t max_known = 4);
CheckResult check_axis_nonexpansive();
CheckResult check_scan();

/// Criteria 1-10 in order.
std::vector<CheckResult> run_property_suite(std::uint64_t seed);

/// One line per check; times are printed only when asked so the payload
/// stays byte-identical across runs.
std::string format_results(const std::vector<CheckResult>& results, bool with_time);

}  // namespace heis
