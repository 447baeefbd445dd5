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

// Brute-force statevector reference for small systems. Nothing here is on the
// production path; it exists to cross-check the tableau code.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ghz_clifford/clifford_group.hpp"
#include "ghz_clifford/partition.hpp"
#include "ghz_clifford/rng.hpp"
#include "ghz_clifford/tableau.hpp"

namespace ghz::dense {

using cplx = std::complex<double>;
inline constexpr std::size_t kMaxQubits = 12;

/// Single-qubit Pauli matrix for the Hermitian encoding (x, z).
inline Eigen::Matrix2cd pauli_matrix(bool x, bool z) {
  Eigen::Matrix2cd m;
  if (!x && !z) m << 1, 0, 0, 1;
  else if (x && !z) m << 0, 1, 1, 0;
  else if (!x && z) m << 1, 0, 0, -1;
  else m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}

/// 4x4 matrix of a two-qubit Pauli on basis index b1 + 2 b2 (first qubit is the low bit).
inline Eigen::Matrix4cd pauli2_matrix(Pauli2 p) {
  const Eigen::Matrix2cd a = pauli_matrix(p.bits & 1u, (p.bits >> 1) & 1u);
  const Eigen::Matrix2cd b = pauli_matrix((p.bits >> 2) & 1u, (p.bits >> 3) & 1u);
  Eigen::Matrix4cd m;
  for (int i2 = 0; i2 < 2; ++i2)
    for (int i1 = 0; i1 < 2; ++i1)
      for (int j2 = 0; j2 < 2; ++j2)
        for (int j1 = 0; j1 < 2; ++j1) m(i1 + 2 * i2, j1 + 2 * j2) = a(i1, j1) * b(i2, j2);
  static const cplx kPhase[] = {1.0, cplx(0, 1), -1.0, cplx(0, -1)};
  return kPhase[p.phase & 3u] * m;
}

/// Unitary realising `gate` by conjugation, fixed up to global phase. Column 0
/// is the joint +1 eigenvector of the images of Z1 and Z2; the remaining
/// columns follow by applying the images of X1 and X2. The first nonzero
/// entry of column 0 is made real positive.
inline Eigen::Matrix4cd gate_unitary(const TwoQubitClifford& gate) {
  const Eigen::Matrix4cd id = Eigen::Matrix4cd::Identity();
  const Eigen::Matrix4cd z1 = pauli2_matrix(gate.basis_image(1));
  const Eigen::Matrix4cd z2 = pauli2_matrix(gate.basis_image(3));
  const Eigen::Matrix4cd x1 = pauli2_matrix(gate.basis_image(0));
  const Eigen::Matrix4cd x2 = pauli2_matrix(gate.basis_image(2));
  const Eigen::Matrix4cd proj = 0.25 * (id + z1) * (id + z2);
  int best = 0;
  for (int c = 1; c < 4; ++c) {
    if (proj.col(c).norm() > proj.col(best).norm()) best = c;
  }
  Eigen::Vector4cd v0 = proj.col(best).normalized();
  for (int i = 0; i < 4; ++i) {
    if (std::abs(v0(i)) > 1e-12) {
      v0 *= std::conj(v0(i)) / std::abs(v0(i));
      break;
    }
  }
  Eigen::Matrix4cd u;
  u.col(0) = v0;
  u.col(1) = x1 * v0;
  u.col(2) = x2 * v0;
  u.col(3) = x2 * x1 * v0;
  return u;
}

class DenseState {
 public:
  explicit DenseState(std::size_t n_qubits) : n_(n_qubits) {
    if (n_qubits == 0 || n_qubits > kMaxQubits) {
      throw std::invalid_argument("DenseState: supports 1.." + std::to_string(kMaxQubits) + " qubits");
    }
    amps_ = Eigen::VectorXcd::Zero(Eigen::Index{1} << n_qubits);
    amps_(0) = 1.0;
  }

  std::size_t n_qubits() const noexcept { return n_; }
  const Eigen::VectorXcd& amplitudes() const noexcept { return amps_; }
  double norm() const { return amps_.norm(); }

  void apply_unitary(const Eigen::Matrix4cd& u, std::size_t q1, std::size_t q2) {
    if (q1 >= n_ || q2 >= n_ || q1 == q2) throw std::out_of_range("DenseState: bad qubit pair");
    const std::size_t m1 = std::size_t{1} << q1, m2 = std::size_t{1} << q2;
    const std::size_t dim = std::size_t{1} << n_;
    for (std::size_t base = 0; base < dim; ++base) {
      if (base & (m1 | m2)) continue;
      const std::size_t idx[4] = {base, base | m1, base | m2, base | m1 | m2};
      cplx in[4], out[4];
      for (int k = 0; k < 4; ++k) in[k] = amps_(static_cast<Eigen::Index>(idx[k]));
      for (int r = 0; r < 4; ++r) {
        out[r] = 0;
        for (int k = 0; k < 4; ++k) out[r] += u(r, k) * in[k];
      }
      for (int k = 0; k < 4; ++k) amps_(static_cast<Eigen::Index>(idx[k])) = out[k];
    }
  }

  void apply(const TwoQubitClifford& gate, std::size_t q1, std::size_t q2) { apply_unitary(gate_unitary(gate), q1, q2); }

  /// Probability of reading `outcome` on Z_qubit (1 means eigenvalue -1).
  double outcome_probability(std::size_t qubit, bool outcome) const {
    double p = 0;
    for (Eigen::Index i = 0; i < amps_.size(); ++i) {
      if (((static_cast<std::size_t>(i) >> qubit) & 1u) == outcome) p += std::norm(amps_(i));
    }
    return p;
  }

  /// Projects onto `outcome` and renormalises; returns the prior probability.
  double project_z(std::size_t qubit, bool outcome) {
    const double p = outcome_probability(qubit, outcome);
    if (p < 1e-12) throw std::logic_error("DenseState::project_z: outcome has zero probability");
    for (Eigen::Index i = 0; i < amps_.size(); ++i) {
      if (((static_cast<std::size_t>(i) >> qubit) & 1u) != outcome) amps_(i) = 0;
    }
    amps_ /= std::sqrt(p);
    return p;
  }

 private:
  std::size_t n_;
  Eigen::VectorXcd amps_;
};

inline DenseState apply_gate_dense(DenseState state, const TwoQubitClifford& gate, std::size_t q1, std::size_t q2) {
  state.apply(gate, q1, q2);
  return state;
}

namespace detail {

/// Reshapes the amplitudes into a (2^|rows|) x (2^rest) matrix, row index built
/// from the bits of `rows` in order and column index from the remaining qubits
/// in increasing order.
inline Eigen::MatrixXcd bipartite_matrix(const DenseState& s, std::span<const std::size_t> rows) {
  const std::size_t n = s.n_qubits();
  std::vector<bool> in_rows(n, false);
  for (std::size_t q : rows) in_rows[q] = true;
  std::vector<std::size_t> cols;
  for (std::size_t q = 0; q < n; ++q) {
    if (!in_rows[q]) cols.push_back(q);
  }
  Eigen::MatrixXcd m(Eigen::Index{1} << rows.size(), Eigen::Index{1} << cols.size());
  const auto& a = s.amplitudes();
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const std::size_t idx = static_cast<std::size_t>(i);
    std::size_t r = 0, c = 0;
    for (std::size_t k = 0; k < rows.size(); ++k) r |= ((idx >> rows[k]) & 1u) << k;
    for (std::size_t k = 0; k < cols.size(); ++k) c |= ((idx >> cols[k]) & 1u) << k;
    m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = a(i);
  }
  return m;
}

inline double entropy_of(const Eigen::MatrixXcd& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
  double s = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double l = es.eigenvalues()(i);
    if (l > 1e-14) s -= l * std::log2(l);
  }
  return s;
}

}  // namespace detail

/// Reduced density matrix of `subset`, indexed by the subset bits in the given order.
inline Eigen::MatrixXcd reduced_density(const DenseState& s, std::span<const std::size_t> subset) {
  const Eigen::MatrixXcd m = detail::bipartite_matrix(s, subset);
  return m * m.adjoint();
}

/// Base-2 von Neumann entropy of the reduced state on `subset`.
inline double entropy_dense(const DenseState& s, std::span<const std::size_t> subset) {
  if (subset.empty() || subset.size() == s.n_qubits()) return 0.0;
  // Work on the smaller side; both have the same spectrum.
  std::vector<bool> in(s.n_qubits(), false);
  for (std::size_t q : subset) in[q] = true;
  std::vector<std::size_t> other;
  for (std::size_t q = 0; q < s.n_qubits(); ++q) {
    if (!in[q]) other.push_back(q);
  }
  if (other.size() < subset.size()) return detail::entropy_of(reduced_density(s, other));
  return detail::entropy_of(reduced_density(s, subset));
}

/// log2 Tr[(rho_AB^{T_B})^3] + S(A) + S(B) + S(C). On stabilizer states this
/// equals the GHZ_3 count; a non-integral value there signals a bug.
inline double g3_replica(const DenseState& s, const Partition& p) {
  if (p.n_parties() != 3) throw std::invalid_argument("g3_replica: partition must be tripartite");
  if (p.n_qubits() != s.n_qubits()) throw std::invalid_argument("g3_replica: partition size mismatch");
  const auto& a = p.party(0);
  const auto& b = p.party(1);
  std::vector<std::size_t> ab(a.begin(), a.end());
  ab.insert(ab.end(), b.begin(), b.end());
  const Eigen::MatrixXcd rho = reduced_density(s, ab);
  const Eigen::Index da = Eigen::Index{1} << a.size();
  const Eigen::Index db = Eigen::Index{1} << b.size();
  // Row index = ia + da * ib; transpose the B indices.
  Eigen::MatrixXcd pt(rho.rows(), rho.cols());
  for (Eigen::Index ib = 0; ib < db; ++ib)
    for (Eigen::Index ia = 0; ia < da; ++ia)
      for (Eigen::Index jb = 0; jb < db; ++jb)
        for (Eigen::Index ja = 0; ja < da; ++ja) pt(ia + da * ib, ja + da * jb) = rho(ia + da * jb, ja + da * ib);
  const Eigen::MatrixXcd sq = pt * pt;
  const double tr3 = (sq.cwiseProduct(pt.transpose())).sum().real();
  return std::log2(tr3) + entropy_dense(s, a) + entropy_dense(s, b) + entropy_dense(s, p.party(2));
}

/// Returns the nearest integer, throwing if `v` is further than `tol` from it.
inline int require_integral(double v, double tol = 1e-4) {
  const double r = std::round(v);
  if (std::abs(v - r) > tol) throw std::logic_error("dense oracle: value " + std::to_string(v) + " is not integral");
  return static_cast<int>(r);
}

/// Every Pauli X^a Z^b (up to phase) that stabilizes the state, as packed
/// words a | (b << N), found by brute force: for each X pattern a the
/// expectations over all Z patterns are one Walsh-Hadamard transform.
inline std::vector<std::uint32_t> stabilizer_elements(const DenseState& s) {
  const std::size_t n = s.n_qubits();
  const std::size_t dim = std::size_t{1} << n;
  const auto& psi = s.amplitudes();
  std::vector<std::uint32_t> out;
  std::vector<cplx> f(dim);
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t k = 0; k < dim; ++k) {
      f[k] = std::conj(psi(static_cast<Eigen::Index>(k ^ a))) * psi(static_cast<Eigen::Index>(k));
    }
    for (std::size_t h = 1; h < dim; h <<= 1) {
      for (std::size_t i = 0; i < dim; i += 2 * h) {
        for (std::size_t j = i; j < i + h; ++j) {
          const cplx u = f[j], v = f[j + h];
          f[j] = u + v;
          f[j + h] = u - v;
        }
      }
    }
    for (std::size_t b = 0; b < dim; ++b) {
      if (std::abs(f[b]) > 1.0 - 1e-6) out.push_back(static_cast<std::uint32_t>(a | (b << n)));
    }
  }
  return out;
}

/// Plain GF(2) rank of small bit vectors.
inline int rank_u32(std::vector<std::uint32_t> v) {
  int rank = 0;
  for (int bit = 31; bit >= 0; --bit) {
    const std::uint32_t m = std::uint32_t{1} << bit;
    auto it = std::find_if(v.begin() + rank, v.end(), [m](std::uint32_t x) { return (x & m) != 0; });
    if (it == v.end()) continue;
    std::iter_swap(v.begin() + rank, it);
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (k != static_cast<std::size_t>(rank) && (v[k] & m)) v[k] ^= v[static_cast<std::size_t>(rank)];
    }
    ++rank;
  }
  return rank;
}

/// GHZ_n index straight from the definition: enumerate the whole stabilizer
/// group, keep the elements acting trivially on at least one party and take
/// N minus the rank of their span (halved on bipartitions).
inline int ghz_index_dense(const DenseState& s, const Partition& p) {
  const std::size_t n = s.n_qubits();
  if (p.n_qubits() != n) throw std::invalid_argument("ghz_index_dense: partition size mismatch");
  const auto elements = stabilizer_elements(s);
  if (elements.size() != (std::size_t{1} << n)) throw std::logic_error("ghz_index_dense: not a stabilizer state");
  std::vector<std::uint32_t> party_masks(p.n_parties(), 0);
  for (std::size_t q = 0; q < n; ++q) party_masks[p.label(q)] |= (1u << q) | (1u << (q + n));
  std::vector<std::uint32_t> local;
  for (std::uint32_t e : elements) {
    if (std::any_of(party_masks.begin(), party_masks.end(), [e](std::uint32_t m) { return (e & m) == 0; })) {
      local.push_back(e);
    }
  }
  const int deficit = static_cast<int>(n) - rank_u32(local);
  return p.n_parties() == 2 ? deficit / 2 : deficit;
}

/// Closed-form typicality bound on the Clifford-averaged GHZ_3 count:
/// log2[3 2^-N + (2^{2N_A} + 2^{2N_B} + 2^{2N_C}) / ((2^N + 1)(2^N + 2))]
/// + sum of maximal entropies min(|X|, N - |X|). Evaluated in log space.
inline double typicality_bound(std::size_t n, std::size_t n_a, std::size_t n_b, std::size_t n_c) {
  if (n == 0 || n_a == 0 || n_b == 0 || n_c == 0 || n_a + n_b + n_c != n) {
    throw std::invalid_argument("typicality_bound: need positive party sizes summing to N");
  }
  const double nd = static_cast<double>(n);
  // log2 of (2^N + 1)(2^N + 2) = 2N + log2((1 + 2^-N)(1 + 2^{1-N})).
  const double log_den = 2 * nd + std::log2((1 + std::exp2(-nd)) * (1 + std::exp2(1 - nd)));
  std::vector<double> logs = {std::log2(3.0) - nd, 2.0 * static_cast<double>(n_a) - log_den,
                              2.0 * static_cast<double>(n_b) - log_den, 2.0 * static_cast<double>(n_c) - log_den};
  const double top = *std::max_element(logs.begin(), logs.end());
  double acc = 0;
  for (double l : logs) acc += std::exp2(l - top);
  const double log_term = top + std::log2(acc);
  auto s_max = [n](std::size_t k) { return static_cast<double>(std::min(k, n - k)); };
  return log_term + s_max(n_a) + s_max(n_b) + s_max(n_c);
}

}  // namespace ghz::dense
