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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ghz_clifford/bit_matrix.hpp"
#include "ghz_clifford/clifford_group.hpp"
#include "ghz_clifford/pauli.hpp"
#include "ghz_clifford/rng.hpp"

namespace ghz {

struct MeasurementOutcome {
  /// 0 for eigenvalue +1 of Z, 1 for -1.
  bool value = false;
  bool deterministic = false;

  friend bool operator==(const MeasurementOutcome&, const MeasurementOutcome&) = default;
};

/// Stabilizer generators of an N-qubit pure state (no destabilizers).
///
/// Row r of the generator matrix holds generator r with the X block in words
/// [0, W) and the Z block in words [W, 2W), W = ceil(N / 64). Column indices of
/// qubit q are therefore q (X) and 64 W + q (Z). Phases are stored as powers
/// of i in the Hermitian convention of PauliString, so they are always 0 or 2.
class StabilizerTableau {
 public:
  /// |0...0>, generators +Z_1 ... +Z_N.
  static StabilizerTableau product_state(std::size_t n_qubits) {
    if (n_qubits == 0) throw std::invalid_argument("StabilizerTableau: number of qubits must be positive");
    StabilizerTableau t(n_qubits);
    for (std::size_t q = 0; q < n_qubits; ++q) t.matrix_.set(q, t.z_col(q), true);
    return t;
  }

  /// Builds a tableau from explicit generators and validates it.
  static StabilizerTableau from_generators(const std::vector<PauliString>& gens) {
    if (gens.empty()) throw std::invalid_argument("StabilizerTableau: no generators");
    const std::size_t n = gens.front().n_qubits();
    if (gens.size() != n) throw std::invalid_argument("StabilizerTableau: need exactly N generators for N qubits");
    StabilizerTableau t(n);
    for (std::size_t r = 0; r < n; ++r) {
      const PauliString& g = gens[r];
      if (g.n_qubits() != n) throw std::invalid_argument("StabilizerTableau: generator size mismatch");
      if (!g.is_hermitian()) throw std::invalid_argument("StabilizerTableau: generator " + g.to_string() + " is not Hermitian");
      for (std::size_t q = 0; q < n; ++q) {
        t.matrix_.set(r, t.x_col(q), g.x(q));
        t.matrix_.set(r, t.z_col(q), g.z(q));
      }
      t.phases_[r] = g.phase();
    }
    if (!t.generators_commute()) throw std::invalid_argument("StabilizerTableau: generators do not commute");
    if (!t.generators_independent()) throw std::invalid_argument("StabilizerTableau: generators are dependent");
    return t;
  }

  static StabilizerTableau from_strings(const std::vector<std::string>& gens) {
    std::vector<PauliString> ps;
    ps.reserve(gens.size());
    for (const auto& s : gens) ps.push_back(PauliString::parse(s));
    return from_generators(ps);
  }

  std::size_t n_qubits() const noexcept { return n_; }
  std::size_t block_words() const noexcept { return w_; }
  std::size_t x_col(std::size_t q) const noexcept { return q; }
  std::size_t z_col(std::size_t q) const noexcept { return w_ * kWordBits + q; }

  /// Generator rows as a bit matrix (signs dropped); see class comment for the column layout.
  const BitMatrix& generator_matrix() const noexcept { return matrix_; }
  const std::vector<std::uint8_t>& phases() const noexcept { return phases_; }

  PauliString generator(std::size_t r) const {
    const auto row = matrix_.row(r);
    return PauliString(n_, row.subspan(0, w_), row.subspan(w_, w_), phases_[r]);
  }

  std::vector<PauliString> generators() const {
    std::vector<PauliString> out;
    out.reserve(n_);
    for (std::size_t r = 0; r < n_; ++r) out.push_back(generator(r));
    return out;
  }

  /// Sets every sign to +.
  void clear_phases() noexcept { std::fill(phases_.begin(), phases_.end(), std::uint8_t{0}); }

  /// Conjugates every generator by `gate` acting on (q1, q2).
  void apply(const TwoQubitClifford& gate, std::size_t q1, std::size_t q2) {
    if (q1 >= n_ || q2 >= n_ || q1 == q2) {
      throw std::out_of_range("StabilizerTableau::apply: bad qubit pair (" + std::to_string(q1) + ", " +
                              std::to_string(q2) + ") for N = " + std::to_string(n_));
    }
    const std::size_t stride = matrix_.words_per_row();
    const std::size_t xw1 = q1 / kWordBits, xw2 = q2 / kWordBits;
    const std::size_t zw1 = w_ + xw1, zw2 = w_ + xw2;
    const unsigned s1 = q1 % kWordBits, s2 = q2 % kWordBits;
    word_t* base = matrix_.row(0).data();
    for (std::size_t r = 0; r < n_; ++r) {
      word_t* row = base + r * stride;
      const unsigned in = static_cast<unsigned>((row[xw1] >> s1) & 1u) | static_cast<unsigned>(((row[zw1] >> s1) & 1u) << 1) |
                          static_cast<unsigned>(((row[xw2] >> s2) & 1u) << 2) | static_cast<unsigned>(((row[zw2] >> s2) & 1u) << 3);
      if (in == 0) continue;
      const TwoQubitClifford::Image img = gate.image(static_cast<std::uint8_t>(in));
      row[xw1] = (row[xw1] & ~(word_t{1} << s1)) | (word_t{img.bits & 1u} << s1);
      row[zw1] = (row[zw1] & ~(word_t{1} << s1)) | (word_t{(img.bits >> 1) & 1u} << s1);
      row[xw2] = (row[xw2] & ~(word_t{1} << s2)) | (word_t{(img.bits >> 2) & 1u} << s2);
      row[zw2] = (row[zw2] & ~(word_t{1} << s2)) | (word_t{(img.bits >> 3) & 1u} << s2);
      if (img.negate) phases_[r] ^= 2u;
    }
  }

  /// Projective Z measurement of `qubit`. A random outcome consumes one bit of `rng`;
  /// a deterministic one consumes nothing and leaves the state unchanged.
  MeasurementOutcome measure_z(std::size_t qubit, Rng& rng) {
    if (qubit >= n_) throw std::out_of_range("StabilizerTableau::measure_z: qubit " + std::to_string(qubit) + " out of range");
    const std::size_t xc = x_col(qubit);
    std::size_t pivot = n_;
    for (std::size_t r = 0; r < n_; ++r) {
      if (matrix_.get(r, xc)) {
        pivot = r;
        break;
      }
    }
    if (pivot == n_) return {forced_z_value(qubit), true};

    for (std::size_t r = pivot + 1; r < n_; ++r) {
      if (matrix_.get(r, xc)) multiply_row_into(r, pivot);
    }
    const bool coin = rng.bit();
    auto row = matrix_.row(pivot);
    std::fill(row.begin(), row.end(), word_t{0});
    matrix_.set(pivot, z_col(qubit), true);
    phases_[pivot] = coin ? 2 : 0;
    return {coin, false};
  }

  /// Sign of +/-Z_qubit when it lies in the stabilizer group; empty when some
  /// generator anticommutes with it.
  std::optional<bool> z_expectation_sign(std::size_t qubit) const {
    for (std::size_t r = 0; r < n_; ++r) {
      if (matrix_.get(r, x_col(qubit))) return std::nullopt;
    }
    return forced_z_value(qubit);
  }

  bool generators_commute() const noexcept {
    for (std::size_t a = 0; a < n_; ++a) {
      const auto ra = matrix_.row(a);
      for (std::size_t b = a + 1; b < n_; ++b) {
        const auto rb = matrix_.row(b);
        if (anticommute(ra.subspan(0, w_), ra.subspan(w_, w_), rb.subspan(0, w_), rb.subspan(w_, w_))) return false;
      }
    }
    return true;
  }

  bool generators_independent() const { return canonical_rank(matrix_) == n_; }

  bool phases_hermitian() const noexcept {
    for (auto p : phases_) {
      if (p & 1u) return false;
    }
    return true;
  }

  /// All tableau invariants: commuting, independent, Hermitian generators.
  bool valid() const { return phases_hermitian() && generators_commute() && generators_independent(); }

  friend bool operator==(const StabilizerTableau&, const StabilizerTableau&) = default;

 private:
  explicit StabilizerTableau(std::size_t n)
      : n_(n), w_(words_for_bits(n)), matrix_(n, 2 * words_for_bits(n) * kWordBits), phases_(n, 0) {}

  /// generator[dst] = generator[dst] * generator[src]
  void multiply_row_into(std::size_t dst, std::size_t src) {
    const auto s = matrix_.row(src);
    auto d = matrix_.row(dst);
    const unsigned k = product_log_i(d.subspan(0, w_), d.subspan(w_, w_), s.subspan(0, w_), s.subspan(w_, w_));
    phases_[dst] = static_cast<std::uint8_t>((phases_[dst] + phases_[src] + k) & 3u);
    matrix_.xor_row(dst, src);
  }

  /// Resolves the sign of Z_qubit, which must commute with every generator, by
  /// elimination on a scratch copy. Returns true for eigenvalue -1.
  bool forced_z_value(std::size_t qubit) const {
    StabilizerTableau work = *this;
    // X block first: rows without an X pivot end up purely Z-type.
    std::size_t pivot = 0;
    for (std::size_t q = 0; q < n_ && pivot < n_; ++q) {
      pivot = work.eliminate_column(work.x_col(q), pivot);
    }
    const std::size_t z_start = pivot;
    std::vector<std::size_t> pivot_cols;
    for (std::size_t q = 0; q < n_ && pivot < n_; ++q) {
      const std::size_t before = pivot;
      pivot = work.eliminate_column(work.z_col(q), pivot);
      if (pivot != before) pivot_cols.push_back(work.z_col(q));
    }
    // Multiply together the Z-type rows that reproduce Z_qubit.
    PauliString acc(n_);
    std::vector<word_t> target(work.matrix_.words_per_row(), 0);
    target[z_col(qubit) / kWordBits] = word_t{1} << (z_col(qubit) % kWordBits);
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) {
      const std::size_t c = pivot_cols[i];
      if (!((target[c / kWordBits] >> (c % kWordBits)) & 1u)) continue;
      const auto row = work.matrix_.row(z_start + i);
      for (std::size_t k = 0; k < target.size(); ++k) target[k] ^= row[k];
      acc *= work.generator(z_start + i);
    }
    for (word_t w : target) {
      if (w != 0) throw std::logic_error("StabilizerTableau: Z is not in the stabilizer group");
    }
    return acc.phase() == 2;
  }

  /// One forward elimination step with phase tracking; returns the next pivot slot.
  std::size_t eliminate_column(std::size_t col, std::size_t pivot) {
    std::size_t r = pivot;
    while (r < n_ && !matrix_.get(r, col)) ++r;
    if (r == n_) return pivot;
    if (r != pivot) {
      matrix_.swap_rows(pivot, r);
      std::swap(phases_[pivot], phases_[r]);
    }
    for (std::size_t k = pivot + 1; k < n_; ++k) {
      if (matrix_.get(k, col)) multiply_row_into(k, pivot);
    }
    return pivot + 1;
  }

  std::size_t n_ = 0;
  std::size_t w_ = 0;
  BitMatrix matrix_;
  std::vector<std::uint8_t> phases_;
};

}  // namespace ghz
