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

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ghz_clifford/rng.hpp"

namespace ghz {

/// Two-qubit Pauli i^phase sigma(bits). Bit layout: bit0 = x1, bit1 = z1,
/// bit2 = x2, bit3 = z2; sigma(1,1) = Y.
struct Pauli2 {
  std::uint8_t bits = 0;
  std::uint8_t phase = 0;

  friend bool operator==(const Pauli2&, const Pauli2&) = default;
};

namespace detail {

constexpr unsigned single_qubit_log_i(unsigned x1, unsigned z1, unsigned x2, unsigned z2) {
  if (!x1 && !z1) return 0;
  if (x1 && z1) return (4 + z2 - x2) & 3u;         // Y * .
  if (x1) return (4 + z2 * (2 * x2) - z2) & 3u;    // X * .
  return (4 + x2 - 2 * x2 * z2) & 3u;              // Z * .
}

}  // namespace detail

constexpr Pauli2 operator*(Pauli2 a, Pauli2 b) {
  unsigned k = a.phase + b.phase;
  for (unsigned q = 0; q < 2; ++q) {
    k += detail::single_qubit_log_i((a.bits >> (2 * q)) & 1u, (a.bits >> (2 * q + 1)) & 1u,
                                    (b.bits >> (2 * q)) & 1u, (b.bits >> (2 * q + 1)) & 1u);
  }
  return Pauli2{static_cast<std::uint8_t>(a.bits ^ b.bits), static_cast<std::uint8_t>(k & 3u)};
}

/// Symplectic form on the 4-bit encoding.
constexpr bool symplectic_form(std::uint8_t u, std::uint8_t v) {
  const unsigned swapped = ((v & 0x5u) << 1) | ((v & 0xAu) >> 1);
  return std::popcount(static_cast<unsigned>(u & swapped)) & 1;
}

/// Columns are the images of the basis X1, Z1, X2, Z2.
using SymplecticColumns = std::array<std::uint8_t, 4>;

constexpr bool is_symplectic(const SymplecticColumns& cols) {
  for (unsigned i = 0; i < 4; ++i) {
    for (unsigned j = i + 1; j < 4; ++j) {
      const bool want = symplectic_form(static_cast<std::uint8_t>(1u << i), static_cast<std::uint8_t>(1u << j));
      if (symplectic_form(cols[i], cols[j]) != want) return false;
    }
  }
  return true;
}

/// All 720 elements of Sp(4, 2) in lexicographic order of the packed columns.
inline const std::vector<SymplecticColumns>& symplectic_group() {
  static const std::vector<SymplecticColumns> group = [] {
    std::vector<SymplecticColumns> out;
    out.reserve(720);
    for (unsigned packed = 0; packed < (1u << 16); ++packed) {
      const SymplecticColumns cols{static_cast<std::uint8_t>(packed & 0xF), static_cast<std::uint8_t>((packed >> 4) & 0xF),
                                   static_cast<std::uint8_t>((packed >> 8) & 0xF), static_cast<std::uint8_t>((packed >> 12) & 0xF)};
      if (is_symplectic(cols)) out.push_back(cols);
    }
    return out;
  }();
  return group;
}

/// A Clifford on two qubits modulo global phase, stored as the signed images of
/// the basis Paulis under conjugation P -> U P U^dagger. Images of all 16
/// Hermitian Paulis are tabulated at construction for the tableau update.
class TwoQubitClifford {
 public:
  /// Conjugation result for a Hermitian input: output bits plus a sign flip.
  struct Image {
    std::uint8_t bits;
    bool negate;
  };

  TwoQubitClifford() : TwoQubitClifford({0x1, 0x2, 0x4, 0x8}, 0) {}

  /// `signs` bit i set means the image of basis Pauli i carries a minus sign.
  TwoQubitClifford(const SymplecticColumns& columns, std::uint8_t signs) : columns_(columns), signs_(signs & 0xF) {
    if (!is_symplectic(columns_)) throw std::invalid_argument("TwoQubitClifford: matrix is not symplectic");
    build_table();
  }

  static TwoQubitClifford identity() { return {}; }
  /// CNOT with control on the first qubit.
  static TwoQubitClifford cnot() { return {{0x5, 0x2, 0x4, 0xA}, 0}; }
  /// CNOT with control on the second qubit.
  static TwoQubitClifford cnot_reversed() { return {{0x1, 0xA, 0x5, 0x8}, 0}; }
  static TwoQubitClifford cz() { return {{0x9, 0x2, 0x6, 0x8}, 0}; }
  static TwoQubitClifford swap() { return {{0x4, 0x8, 0x1, 0x2}, 0}; }
  /// Hadamard on qubit `which` (0 or 1).
  static TwoQubitClifford hadamard(unsigned which) {
    return which == 0 ? TwoQubitClifford{{0x2, 0x1, 0x4, 0x8}, 0} : TwoQubitClifford{{0x1, 0x2, 0x8, 0x4}, 0};
  }
  /// S gate on qubit `which`: X -> Y, Z -> Z.
  static TwoQubitClifford phase_s(unsigned which) {
    return which == 0 ? TwoQubitClifford{{0x3, 0x2, 0x4, 0x8}, 0} : TwoQubitClifford{{0x1, 0x2, 0xC, 0x8}, 0};
  }
  /// Pauli X on qubit `which`: flips the sign of Z there.
  static TwoQubitClifford pauli_x(unsigned which) { return {{0x1, 0x2, 0x4, 0x8}, static_cast<std::uint8_t>(which == 0 ? 0x2 : 0x8)}; }

  const SymplecticColumns& columns() const noexcept { return columns_; }
  std::uint8_t signs() const noexcept { return signs_; }

  /// Entry (row, col) of the 4x4 matrix acting on (x1, z1, x2, z2).
  bool symplectic(unsigned row, unsigned col) const noexcept { return (columns_[col] >> row) & 1u; }

  /// Signed image of basis Pauli i (0: X1, 1: Z1, 2: X2, 3: Z2).
  Pauli2 basis_image(unsigned i) const noexcept {
    return Pauli2{columns_[i], static_cast<std::uint8_t>(((signs_ >> i) & 1u) ? 2 : 0)};
  }

  /// U P U^dagger for an arbitrary (not necessarily Hermitian) P.
  Pauli2 conjugate(Pauli2 p) const noexcept {
    // sigma(x,z) = i^{xz} X^x Z^z on each qubit, so expand in the ordered basis.
    const unsigned y_count = ((p.bits & 1u) & ((p.bits >> 1) & 1u)) + (((p.bits >> 2) & 1u) & ((p.bits >> 3) & 1u));
    Pauli2 acc{0, static_cast<std::uint8_t>((p.phase + y_count) & 3u)};
    for (unsigned i = 0; i < 4; ++i) {
      if ((p.bits >> i) & 1u) acc = acc * basis_image(i);
    }
    return acc;
  }

  Image image(std::uint8_t hermitian_bits) const noexcept { return table_[hermitian_bits & 0xF]; }

  friend bool operator==(const TwoQubitClifford& a, const TwoQubitClifford& b) {
    return a.columns_ == b.columns_ && a.signs_ == b.signs_;
  }

 private:
  void build_table() {
    for (std::uint8_t b = 0; b < 16; ++b) {
      const Pauli2 out = conjugate(Pauli2{b, 0});
      table_[b] = Image{out.bits, out.phase == 2};
    }
  }

  SymplecticColumns columns_{};
  std::uint8_t signs_ = 0;
  std::array<Image, 16> table_{};
};

/// compose(g1, g2) is the unitary U1 U2: conjugation applies g2 first, then g1.
inline TwoQubitClifford compose(const TwoQubitClifford& g1, const TwoQubitClifford& g2) {
  SymplecticColumns cols{};
  std::uint8_t signs = 0;
  for (unsigned i = 0; i < 4; ++i) {
    const Pauli2 img = g1.conjugate(g2.basis_image(i));
    cols[i] = img.bits;
    if (img.phase == 2) signs |= static_cast<std::uint8_t>(1u << i);
  }
  return {cols, signs};
}

inline TwoQubitClifford inverse(const TwoQubitClifford& g) {
  // Symplectic inverse Lambda M^T Lambda: column i of M^{-1} has bit j set
  // whenever symplectic_form(M e_j, e_i) is 1.
  SymplecticColumns cols{};
  for (unsigned i = 0; i < 4; ++i) {
    for (unsigned j = 0; j < 4; ++j) {
      const std::uint8_t partner = static_cast<std::uint8_t>(1u << (j ^ 1u));
      if (symplectic_form(g.columns()[j], static_cast<std::uint8_t>(1u << i))) {
        cols[i] |= partner;
      }
    }
  }
  const TwoQubitClifford unsigned_inverse(cols, 0);
  std::uint8_t signs = 0;
  for (unsigned i = 0; i < 4; ++i) {
    // g maps the unsigned preimage to +/- e_i; flip its sign accordingly.
    if (g.conjugate(unsigned_inverse.basis_image(i)).phase == 2) signs |= static_cast<std::uint8_t>(1u << i);
  }
  return {cols, signs};
}

/// Uniform over the 11520 elements of the two-qubit Clifford group modulo
/// global phase: 720 symplectic matrices times 16 sign assignments.
inline TwoQubitClifford sample_uniform(Rng& rng) {
  const auto& group = symplectic_group();
  const std::uint64_t r = rng.below(group.size() * 16);
  return {group[r / 16], static_cast<std::uint8_t>(r % 16)};
}

}  // namespace ghz
