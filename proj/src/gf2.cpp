#include "heis/gf2.hpp"

#include <algorithm>
#include <bit>

namespace heis {

BitVector& BitVector::operator^=(const BitVector& other) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

bool BitVector::dot(const BitVector& other) const {
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) acc ^= words_[i] & other.words_[i];
  return std::popcount(acc) % 2 == 1;
}

bool BitVector::is_zero() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::size_t BitVector::count() const {
  std::size_t n = 0;
  for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::optional<std::size_t> BitVector::lowest() const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] != 0) return i * 64 + static_cast<std::size_t>(std::countr_zero(words_[i]));
  }
  return std::nullopt;
}

std::vector<std::size_t> BitVector::support() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    std::uint64_t w = words_[i];
    while (w != 0) {
      out.push_back(i * 64 + static_cast<std::size_t>(std::countr_zero(w)));
      w &= w - 1;
    }
  }
  return out;
}

BitVector GF2Basis::reduce(BitVector v) const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (v.get(pivots_[i])) v ^= rows_[i];
  }
  return v;
}

bool GF2Basis::insert(BitVector v) {
  v = reduce(std::move(v));
  const auto pivot = v.lowest();
  if (!pivot) return false;
  const auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), *pivot) - pivots_.begin();
  pivots_.insert(pivots_.begin() + pos, *pivot);
  rows_.insert(rows_.begin() + pos, std::move(v));
  return true;
}

GF2Echelon gf2_rref(std::vector<BitVector> rows, std::size_t cols) {
  GF2Echelon out;
  out.cols = cols;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t r = rank;
    while (r < rows.size() && !rows[r].get(c)) ++r;
    if (r == rows.size()) continue;
    std::swap(rows[rank], rows[r]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != rank && rows[i].get(c)) rows[i] ^= rows[rank];
    }
    out.pivots.push_back(c);
    ++rank;
  }
  rows.resize(rank);
  out.rows = std::move(rows);
  return out;
}

std::vector<BitVector> gf2_nullspace(const GF2Echelon& echelon) {
  std::vector<bool> is_pivot(echelon.cols, false);
  for (std::size_t p : echelon.pivots) is_pivot[p] = true;
  std::vector<BitVector> out;
  for (std::size_t free = 0; free < echelon.cols; ++free) {
    if (is_pivot[free]) continue;
    BitVector x(echelon.cols);
    x.set(free);
    for (std::size_t i = 0; i < echelon.rows.size(); ++i) {
      if (echelon.rows[i].get(free)) x.set(echelon.pivots[i]);
    }
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace heis
