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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "ghz_clifford/circuit.hpp"
#include "ghz_clifford/clifford_group.hpp"
#include "ghz_clifford/pauli.hpp"
#include "ghz_clifford/rng.hpp"
#include "ghz_clifford/tableau.hpp"

namespace ghz::testing {

/// Random stabilizer state: brickwork layers with gates on random pairs
/// mixed in, plus occasional measurements.
inline StabilizerTableau random_state(std::size_t n, Rng& rng, std::size_t layers = 0, double p = 0.1) {
  StabilizerTableau t = StabilizerTableau::product_state(n);
  if (layers == 0) layers = n + 2;
  for (std::size_t l = 0; l < layers; ++l) {
    for (std::size_t q = l % 2; q + 1 < n; q += 2) t.apply(sample_uniform(rng), q, q + 1);
    const std::size_t a = rng.below(n);
    std::size_t b = rng.below(n - 1);
    if (b >= a) ++b;
    t.apply(sample_uniform(rng), a, b);
    for (std::size_t q = 0; q < n; ++q) {
      if (rng.uniform() < p) t.measure_z(q, rng);
    }
  }
  return t;
}

/// Rank over GF(2) of a list of bit vectors, one bool per entry.
inline std::size_t naive_rank(std::vector<std::vector<bool>> rows) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && !rows[pivot][c]) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != rank && rows[r][c]) {
        for (std::size_t k = 0; k < cols; ++k) rows[r][k] = rows[r][k] != rows[rank][k];
      }
    }
    ++rank;
  }
  return rank;
}

/// Dense matrix of a Pauli string (qubit 0 is the least significant bit).
inline Eigen::MatrixXcd pauli_dense(const PauliString& p) {
  const std::complex<double> i(0, 1);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  for (std::size_t q = 0; q < p.n_qubits(); ++q) {
    Eigen::Matrix2cd s;
    if (p.x(q) && p.z(q)) {
      s << 0, -i, i, 0;
    } else if (p.x(q)) {
      s << 0, 1, 1, 0;
    } else if (p.z(q)) {
      s << 1, 0, 0, -1;
    } else {
      s << 1, 0, 0, 1;
    }
    Eigen::MatrixXcd next(m.rows() * 2, m.cols() * 2);
    for (Eigen::Index r = 0; r < 2; ++r)
      for (Eigen::Index c = 0; c < 2; ++c) next.block(r * m.rows(), c * m.cols(), m.rows(), m.cols()) = s(r, c) * m;
    m = next;
  }
  static const std::complex<double> kPow[4] = {1.0, i, -1.0, -i};
  return kPow[p.phase() & 3u] * m;
}

inline PauliString random_pauli(std::size_t n, Rng& rng, bool hermitian = false) {
  PauliString p(n);
  for (std::size_t q = 0; q < n; ++q) p.set(q, rng.bit(), rng.bit());
  p.set_phase(static_cast<std::uint8_t>(hermitian ? 2 * rng.below(2) : rng.below(4)));
  return p;
}

}  // namespace ghz::testing
