#include <gtest/gtest.h>

#include <random>

#include "heis/gf2.hpp"

using namespace heis;

namespace {

BitVector random_bits(std::mt19937_64& rng, std::size_t n) {
  BitVector v(n);
  for (std::size_t i = 0; i < n; ++i) v.set(i, rng() & 1);
  return v;
}

}  // namespace

TEST(GF2, NullspaceMatchesBruteForce) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t cols = 1 + rng() % 10, nrows = rng() % 8;
    std::vector<BitVector> rows;
    for (std::size_t r = 0; r < nrows; ++r) rows.push_back(random_bits(rng, cols));
    const GF2Echelon e = gf2_rref(rows, cols);
    const std::vector<BitVector> null = gf2_nullspace(e);
    EXPECT_EQ(e.rank() + null.size(), cols);
    std::size_t solutions = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cols); ++mask) {
      BitVector x(cols);
      for (std::size_t i = 0; i < cols; ++i) x.set(i, (mask >> i) & 1);
      bool ok = true;
      for (const BitVector& r : rows) ok = ok && !r.dot(x);
      solutions += ok;
    }
    EXPECT_EQ(solutions, std::size_t{1} << null.size());
    for (const BitVector& n : null) {
      for (const BitVector& r : rows) EXPECT_FALSE(r.dot(n));
    }
  }
}

TEST(GF2, BasisMembership) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t cols = 70;
    GF2Basis basis(cols);
    std::vector<BitVector> inserted;
    for (int i = 0; i < 5; ++i) {
      inserted.push_back(random_bits(rng, cols));
      basis.insert(inserted.back());
    }
    BitVector sum(cols);
    for (std::size_t i = 0; i < inserted.size(); i += 2) sum ^= inserted[i];
    EXPECT_TRUE(basis.contains(sum));
    EXPECT_EQ(basis.rank(), gf2_rref(inserted, cols).rank());
  }
  BitVector e(130);
  e.set(129);
  EXPECT_EQ(e.lowest(), 129u);
  EXPECT_EQ(e.count(), 1u);
}
