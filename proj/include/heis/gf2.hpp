#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace heis {

/// Dense bit vector over GF(2).
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  std::size_t size() const { return size_; }
  bool get(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
  void set(std::size_t i, bool value = true) {
    const std::uint64_t mask = std::uint64_t{1} << (i % 64);
    if (value) words_[i / 64] |= mask; else words_[i / 64] &= ~mask;
  }
  void flip(std::size_t i) { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }

  BitVector& operator^=(const BitVector& other);
  bool dot(const BitVector& other) const;
  bool is_zero() const;
  std::size_t count() const;
  /// Index of the lowest set bit, or nullopt for the zero vector.
  std::optional<std::size_t> lowest() const;
  std::vector<std::size_t> support() const;

  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Incrementally built row space. Each stored row has a distinct pivot (its
/// lowest set bit) and no bits below it.
class GF2Basis {
 public:
  explicit GF2Basis(std::size_t cols) : cols_(cols) {}

  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return rows_.size(); }
  /// Adds v; returns false when v was already in the span.
  bool insert(BitVector v);
  BitVector reduce(BitVector v) const;
  bool contains(const BitVector& v) const { return reduce(v).is_zero(); }

 private:
  std::size_t cols_;
  std::vector<BitVector> rows_;  // sorted by pivot
  std::vector<std::size_t> pivots_;
};

struct GF2Echelon {
  std::vector<BitVector> rows;  // reduced, one per pivot, ascending pivots
  std::vector<std::size_t> pivots;
  std::size_t cols = 0;
  std::size_t rank() const { return rows.size(); }
};

GF2Echelon gf2_rref(std::vector<BitVector> rows, std::size_t cols);

/// Basis of {x : r . x = 0 for every row r}, one vector per free column.
std::vector<BitVector> gf2_nullspace(const GF2Echelon& echelon);

}  // namespace heis
