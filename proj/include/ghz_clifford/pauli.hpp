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

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ghz_clifford/bit_matrix.hpp"

namespace ghz {

/// Log base i of the scalar picked up by the product of two Hermitian Pauli
/// strings given as packed (x, z) words: sigma(a) * sigma(b) = i^k sigma(a ^ b).
/// Per qubit, anticommuting pairs contribute +1 in cyclic order (XY, YZ, ZX)
/// and -1 otherwise.
inline unsigned product_log_i(std::span<const word_t> ax, std::span<const word_t> az,
                              std::span<const word_t> bx, std::span<const word_t> bz) noexcept {
  unsigned plus = 0;
  unsigned anti = 0;
  for (std::size_t k = 0; k < ax.size(); ++k) {
    const word_t x1 = ax[k], z1 = az[k], x2 = bx[k], z2 = bz[k];
    const word_t x1z2 = x1 & z2;
    const word_t ac = x1z2 ^ (z1 & x2);
    const word_t neither_y = ~((x1 & z1) | (x2 & z2));
    plus += static_cast<unsigned>(std::popcount(ac & (x1z2 ^ neither_y)));
    anti += static_cast<unsigned>(std::popcount(ac));
  }
  return (2 * plus - anti) & 3u;
}

/// Symplectic inner product, 0 when the two strings commute.
inline bool anticommute(std::span<const word_t> ax, std::span<const word_t> az,
                        std::span<const word_t> bx, std::span<const word_t> bz) noexcept {
  word_t acc = 0;
  for (std::size_t k = 0; k < ax.size(); ++k) acc ^= (ax[k] & bz[k]) ^ (az[k] & bx[k]);
  return std::popcount(acc) & 1;
}

/// i^phase times a tensor product of I, X, Y, Z. Qubit q carries
/// (x_q, z_q) = (0,0) I, (1,0) X, (0,1) Z, (1,1) Y.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::size_t n_qubits)
      : n_(n_qubits), x_(words_for_bits(n_qubits), 0), z_(words_for_bits(n_qubits), 0) {}

  PauliString(std::size_t n_qubits, std::span<const word_t> x, std::span<const word_t> z,
              std::uint8_t phase)
      : n_(n_qubits), x_(x.begin(), x.end()), z_(z.begin(), z.end()), phase_(phase & 3u) {}

  /// Parses an optional sign prefix (+, -, +i, -i) followed by one of IXYZ
  /// (or _) per qubit, e.g. "-XZ_Y".
  static PauliString parse(std::string_view text) {
    std::uint8_t phase = 0;
    if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
      phase = text[0] == '-' ? 2 : 0;
      text.remove_prefix(1);
      if (!text.empty() && text[0] == 'i') {
        phase += 1;
        text.remove_prefix(1);
      }
    }
    PauliString p(text.size());
    p.phase_ = phase & 3u;
    for (std::size_t q = 0; q < text.size(); ++q) {
      switch (text[q]) {
        case 'I': case '_': break;
        case 'X': p.set(q, true, false); break;
        case 'Y': p.set(q, true, true); break;
        case 'Z': p.set(q, false, true); break;
        default: throw std::invalid_argument("PauliString::parse: bad character in '" + std::string(text) + "'");
      }
    }
    return p;
  }

  std::size_t n_qubits() const noexcept { return n_; }
  std::uint8_t phase() const noexcept { return phase_; }
  void set_phase(std::uint8_t phase) noexcept { phase_ = phase & 3u; }

  bool x(std::size_t q) const noexcept { return (x_[q / kWordBits] >> (q % kWordBits)) & 1u; }
  bool z(std::size_t q) const noexcept { return (z_[q / kWordBits] >> (q % kWordBits)) & 1u; }

  void set(std::size_t q, bool xbit, bool zbit) noexcept {
    const word_t m = word_t{1} << (q % kWordBits);
    x_[q / kWordBits] = xbit ? (x_[q / kWordBits] | m) : (x_[q / kWordBits] & ~m);
    z_[q / kWordBits] = zbit ? (z_[q / kWordBits] | m) : (z_[q / kWordBits] & ~m);
  }

  char symbol(std::size_t q) const noexcept { return "IXZY"[x(q) | (z(q) << 1)]; }

  std::span<const word_t> x_words() const noexcept { return x_; }
  std::span<const word_t> z_words() const noexcept { return z_; }

  bool is_hermitian() const noexcept { return (phase_ & 1u) == 0; }

  bool commutes_with(const PauliString& o) const {
    check_same_size(o);
    return !anticommute(x_, z_, o.x_, o.z_);
  }

  /// this = this * rhs.
  PauliString& operator*=(const PauliString& rhs) {
    check_same_size(rhs);
    const unsigned k = product_log_i(x_, z_, rhs.x_, rhs.z_);
    for (std::size_t w = 0; w < x_.size(); ++w) {
      x_[w] ^= rhs.x_[w];
      z_[w] ^= rhs.z_[w];
    }
    phase_ = static_cast<std::uint8_t>((phase_ + rhs.phase_ + k) & 3u);
    return *this;
  }

  friend PauliString operator*(PauliString lhs, const PauliString& rhs) { return lhs *= rhs; }

  std::string to_string() const {
    static constexpr const char* kPrefix[] = {"+", "+i", "-", "-i"};
    std::string s = kPrefix[phase_];
    for (std::size_t q = 0; q < n_; ++q) s += symbol(q);
    return s;
  }

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  void check_same_size(const PauliString& o) const {
    if (o.n_ != n_) throw std::invalid_argument("PauliString: size mismatch");
  }

  std::size_t n_ = 0;
  std::vector<word_t> x_;
  std::vector<word_t> z_;
  std::uint8_t phase_ = 0;
};

}  // namespace ghz
