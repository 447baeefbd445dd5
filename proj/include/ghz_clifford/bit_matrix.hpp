// Copyright 2026 The ghz-clifford Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace ghz {

using word_t = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

constexpr std::size_t words_for_bits(std::size_t bits) noexcept {
  return (bits + kWordBits - 1) / kWordBits;
}

/// Dense row-major matrix over GF(2). Each row is a run of 64-bit words, so
/// row additions are word-wise XOR.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), stride_(words_for_bits(cols)), data_(rows * stride_, 0) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t words_per_row() const noexcept { return stride_; }

  bool get(std::size_t r, std::size_t c) const noexcept {
    return (data_[r * stride_ + c / kWordBits] >> (c % kWordBits)) & 1u;
  }
  void set(std::size_t r, std::size_t c, bool v) noexcept {
    word_t& w = data_[r * stride_ + c / kWordBits];
    const word_t m = word_t{1} << (c % kWordBits);
    w = v ? (w | m) : (w & ~m);
  }
  void flip(std::size_t r, std::size_t c) noexcept {
    data_[r * stride_ + c / kWordBits] ^= word_t{1} << (c % kWordBits);
  }

  std::span<word_t> row(std::size_t r) noexcept { return {data_.data() + r * stride_, stride_}; }
  std::span<const word_t> row(std::size_t r) const noexcept {
    return {data_.data() + r * stride_, stride_};
  }

  /// row(dst) ^= row(src)
  void xor_row(std::size_t dst, std::size_t src) noexcept {
    word_t* d = data_.data() + dst * stride_;
    const word_t* s = data_.data() + src * stride_;
    for (std::size_t k = 0; k < stride_; ++k) d[k] ^= s[k];
  }

  void swap_rows(std::size_t a, std::size_t b) noexcept {
    if (a == b) return;
    std::swap_ranges(data_.begin() + a * stride_, data_.begin() + (a + 1) * stride_,
                     data_.begin() + b * stride_);
  }

  bool row_is_zero(std::size_t r) const noexcept {
    const auto w = row(r);
    return std::all_of(w.begin(), w.end(), [](word_t x) { return x == 0; });
  }

  void append_row(std::span<const word_t> words) {
    if (words.size() != stride_) throw std::invalid_argument("BitMatrix::append_row: width mismatch");
    data_.insert(data_.end(), words.begin(), words.end());
    ++rows_;
  }

  void reserve_rows(std::size_t n) { data_.reserve(n * stride_); }

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  std::vector<word_t> data_;
};

/// Forward Gaussian elimination restricted to the columns in `cols`, visited in
/// the given order. Row additions act on whole rows. On return rows [0, rank)
/// carry the pivots and rows [rank, rows) are zero on every listed column.
inline std::size_t eliminate_on_columns(BitMatrix& m, std::span<const std::size_t> cols) {
  std::size_t pivot = 0;
  const std::size_t n = m.rows();
  for (std::size_t c : cols) {
    if (pivot == n) break;
    std::size_t r = pivot;
    while (r < n && !m.get(r, c)) ++r;
    if (r == n) continue;
    m.swap_rows(pivot, r);
    for (std::size_t k = pivot + 1; k < n; ++k) {
      if (m.get(k, c)) m.xor_row(k, pivot);
    }
    ++pivot;
  }
  return pivot;
}

/// GF(2) rank of `m`; the argument is left untouched.
inline std::size_t canonical_rank(const BitMatrix& m) {
  BitMatrix work = m;
  const std::size_t n = work.rows();
  const std::size_t stride = work.words_per_row();
  std::size_t pivot = 0;
  for (std::size_t w = 0; w < stride && pivot < n; ++w) {
    for (std::size_t b = 0; b < kWordBits && pivot < n; ++b) {
      const word_t mask = word_t{1} << b;
      std::size_t r = pivot;
      while (r < n && !(work.row(r)[w] & mask)) ++r;
      if (r == n) continue;
      work.swap_rows(pivot, r);
      const word_t* src = work.row(pivot).data();
      for (std::size_t k = pivot + 1; k < n; ++k) {
        word_t* dst = work.row(k).data();
        if (dst[w] & mask) {
          for (std::size_t j = w; j < stride; ++j) dst[j] ^= src[j];
        }
      }
      ++pivot;
    }
  }
  return pivot;
}

}  // namespace ghz
