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
#include <array>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ghz_clifford/bit_matrix.hpp"
#include "ghz_clifford/partition.hpp"
#include "ghz_clifford/tableau.hpp"

namespace ghz {

/// GHZ content of a tripartite stabilizer state: g GHZ triples, Bell pairs
/// between each pair of parties and, per party, the number of independent
/// generators supported entirely inside it (its unentangled qubits).
struct GhzDecomposition {
  int g = 0;
  int n_ab = 0;
  int n_bc = 0;
  int n_ac = 0;
  std::array<int, 3> local_dims{};

  /// 3 g + 2 (n_AB + n_BC + n_AC) + sum of local dims; equals N for a valid state.
  int accounted_qubits() const noexcept {
    return 3 * g + 2 * (n_ab + n_bc + n_ac) + local_dims[0] + local_dims[1] + local_dims[2];
  }

  friend bool operator==(const GhzDecomposition&, const GhzDecomposition&) = default;
};

namespace detail {

inline void check_subset(const StabilizerTableau& t, std::span<const std::size_t> qubits) {
  std::vector<bool> seen(t.n_qubits(), false);
  for (std::size_t q : qubits) {
    if (q >= t.n_qubits()) throw std::out_of_range("qubit " + std::to_string(q) + " out of range");
    if (seen[q]) throw std::invalid_argument("qubit " + std::to_string(q) + " listed twice");
    seen[q] = true;
  }
}

inline void check_partition(const StabilizerTableau& t, const Partition& p) {
  if (p.n_qubits() != t.n_qubits()) {
    throw std::invalid_argument("partition covers " + std::to_string(p.n_qubits()) + " qubits, state has " +
                                std::to_string(t.n_qubits()));
  }
}

/// Generator-matrix columns of `qubits`: all X columns, then all Z columns.
inline std::vector<std::size_t> qubit_columns(const StabilizerTableau& t, std::span<const std::size_t> qubits) {
  std::vector<std::size_t> cols;
  cols.reserve(2 * qubits.size());
  for (std::size_t q : qubits) cols.push_back(t.x_col(q));
  for (std::size_t q : qubits) cols.push_back(t.z_col(q));
  return cols;
}

/// Generator matrix restricted to the columns of `qubits`, compacted.
inline BitMatrix restrict_columns(const StabilizerTableau& t, std::span<const std::size_t> qubits) {
  const BitMatrix& m = t.generator_matrix();
  const std::size_t k = qubits.size();
  BitMatrix out(t.n_qubits(), 2 * k);
  for (std::size_t r = 0; r < t.n_qubits(); ++r) {
    for (std::size_t i = 0; i < k; ++i) {
      if (m.get(r, t.x_col(qubits[i]))) out.set(r, i, true);
      if (m.get(r, t.z_col(qubits[i]))) out.set(r, k + i, true);
    }
  }
  return out;
}

/// Full generator rows spanning the subgroup that acts trivially on `qubits`.
inline BitMatrix trivial_on(const StabilizerTableau& t, std::span<const std::size_t> qubits) {
  BitMatrix work = t.generator_matrix();
  const auto cols = qubit_columns(t, qubits);
  const std::size_t rank = eliminate_on_columns(work, cols);
  BitMatrix out(0, work.cols());
  out.reserve_rows(work.rows() - rank);
  for (std::size_t r = rank; r < work.rows(); ++r) out.append_row(work.row(r));
  return out;
}

inline int party_union_deficit(const StabilizerTableau& t, const Partition& p, std::span<const std::size_t> order) {
  BitMatrix local(0, t.generator_matrix().cols());
  for (std::size_t i : order) {
    const BitMatrix rows = trivial_on(t, p.party(i));
    for (std::size_t r = 0; r < rows.rows(); ++r) local.append_row(rows.row(r));
  }
  return static_cast<int>(t.n_qubits() - canonical_rank(local));
}

}  // namespace detail

/// GF(2) rank of the generator matrix restricted to the columns of `qubits`.
inline std::size_t subsystem_rank(const StabilizerTableau& t, std::span<const std::size_t> qubits) {
  detail::check_subset(t, qubits);
  if (qubits.empty()) return 0;
  return canonical_rank(detail::restrict_columns(t, qubits));
}

/// Stabilizer entanglement entropy in bits: rank of the restricted matrix minus
/// the subsystem size. Empty and full subsets give 0.
inline int entanglement_entropy(const StabilizerTableau& t, std::span<const std::size_t> subset) {
  detail::check_subset(t, subset);
  if (subset.empty() || subset.size() == t.n_qubits()) return 0;
  return static_cast<int>(subsystem_rank(t, subset)) - static_cast<int>(subset.size());
}

/// S_A + S_C - S_{A u C} for disjoint A and C.
inline int mutual_information(const StabilizerTableau& t, std::span<const std::size_t> a,
                              std::span<const std::size_t> c) {
  std::vector<std::size_t> both(a.begin(), a.end());
  both.insert(both.end(), c.begin(), c.end());
  std::vector<std::size_t> sorted = both;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("mutual_information: subsets overlap");
  }
  return entanglement_entropy(t, a) + entanglement_entropy(t, c) - entanglement_entropy(t, both);
}

/// Number of independent stabilizers supported entirely inside `qubits`.
inline int local_dimension(const StabilizerTableau& t, std::span<const std::size_t> qubits) {
  detail::check_subset(t, qubits);
  std::vector<bool> inside(t.n_qubits(), false);
  for (std::size_t q : qubits) inside[q] = true;
  std::vector<std::size_t> outside;
  for (std::size_t q = 0; q < t.n_qubits(); ++q) {
    if (!inside[q]) outside.push_back(q);
  }
  return static_cast<int>(t.n_qubits() - subsystem_rank(t, outside));
}

/// GHZ_n index: N minus the dimension of the subgroup of stabilizers acting
/// trivially on at least one party. For each party the generators are
/// eliminated on its columns; the rows left with no support there are pooled
/// and their joint rank is dim S_loc. On a bipartition every Bell pair leaves
/// two non-local generators, so the count is halved there and equals S_A.
///
/// `order` selects the party processing order (default left to right); the
/// result does not depend on it.
inline int ghz_index(const StabilizerTableau& t, const Partition& p, std::span<const std::size_t> order = {}) {
  detail::check_partition(t, p);
  std::vector<std::size_t> natural;
  if (order.empty()) {
    natural.resize(p.n_parties());
    std::iota(natural.begin(), natural.end(), std::size_t{0});
    order = natural;
  } else if (order.size() != p.n_parties()) {
    throw std::invalid_argument("ghz_index: order must list every party once");
  }
  const int deficit = detail::party_union_deficit(t, p, order);
  return p.n_parties() == 2 ? deficit / 2 : deficit;
}

/// Tripartite GHZ count by a second route: the local subgroup is assembled
/// from left-kernel vectors of each party's column block, and g is the number
/// of original generators needed to extend it to the full group. Each such
/// generator is checked to touch all three parties.
inline int ghz3_by_clipping(const StabilizerTableau& t, const Partition& p) {
  detail::check_partition(t, p);
  if (p.n_parties() != 3) throw std::invalid_argument("ghz3_by_clipping: partition must be tripartite");
  const std::size_t n = t.n_qubits();
  const BitMatrix& gens = t.generator_matrix();

  // Span of S_loc kept in echelon form with explicit pivot columns.
  std::vector<std::vector<word_t>> basis;
  std::vector<std::size_t> pivots;
  auto reduce = [&](std::vector<word_t>& v) {
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const std::size_t c = pivots[i];
      if ((v[c / kWordBits] >> (c % kWordBits)) & 1u) {
        for (std::size_t k = 0; k < v.size(); ++k) v[k] ^= basis[i][k];
      }
    }
  };
  auto insert = [&](std::vector<word_t> v) {
    reduce(v);
    for (std::size_t w = 0; w < v.size(); ++w) {
      if (v[w] != 0) {
        const std::size_t c = w * kWordBits + static_cast<std::size_t>(std::countr_zero(v[w]));
        for (auto& b : basis) {
          if ((b[c / kWordBits] >> (c % kWordBits)) & 1u) {
            for (std::size_t k = 0; k < v.size(); ++k) b[k] ^= v[k];
          }
        }
        basis.push_back(std::move(v));
        pivots.push_back(c);
        return true;
      }
    }
    return false;
  };

  for (std::size_t party = 0; party < 3; ++party) {
    // Augment the party block with an identity that records row combinations.
    const BitMatrix block = detail::restrict_columns(t, p.party(party));
    const std::size_t bc = block.cols();
    BitMatrix aug(n, bc + n);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < bc; ++c) {
        if (block.get(r, c)) aug.set(r, c, true);
      }
      aug.set(r, bc + r, true);
    }
    std::vector<std::size_t> cols(bc);
    std::iota(cols.begin(), cols.end(), std::size_t{0});
    const std::size_t rank = eliminate_on_columns(aug, cols);
    for (std::size_t r = rank; r < n; ++r) {
      std::vector<word_t> element(gens.words_per_row(), 0);
      for (std::size_t g = 0; g < n; ++g) {
        if (aug.get(r, bc + g)) {
          const auto row = gens.row(g);
          for (std::size_t k = 0; k < element.size(); ++k) element[k] ^= row[k];
        }
      }
      insert(std::move(element));
    }
  }

  int extensions = 0;
  for (std::size_t g = 0; g < n; ++g) {
    std::vector<word_t> v(gens.row(g).begin(), gens.row(g).end());
    reduce(v);
    const bool independent = std::any_of(v.begin(), v.end(), [](word_t w) { return w != 0; });
    if (!independent) continue;
    for (std::size_t party = 0; party < 3; ++party) {
      bool touches = false;
      for (std::size_t q : p.party(party)) {
        const std::size_t xc = t.x_col(q), zc = t.z_col(q);
        touches = touches || ((v[xc / kWordBits] >> (xc % kWordBits)) & 1u) || ((v[zc / kWordBits] >> (zc % kWordBits)) & 1u);
      }
      if (!touches) throw std::logic_error("ghz3_by_clipping: extension generator misses a party");
    }
    insert(std::move(v));
    ++extensions;
  }
  return extensions;
}

/// Full tripartite decomposition: g_3, Bell pairs
/// n_ij = (N - rk(M_k) - g_3 - dim S_i - dim S_j) / 2 with M_k the columns of
/// the third party, and the local dimensions dim S_i.
inline GhzDecomposition bell_counts(const StabilizerTableau& t, const Partition& p) {
  detail::check_partition(t, p);
  if (p.n_parties() != 3) throw std::invalid_argument("bell_counts: partition must be tripartite");
  const int n = static_cast<int>(t.n_qubits());
  GhzDecomposition d;
  d.g = ghz_index(t, p);
  std::array<int, 3> rk{};
  for (std::size_t i = 0; i < 3; ++i) {
    d.local_dims[i] = local_dimension(t, p.party(i));
    rk[i] = static_cast<int>(subsystem_rank(t, p.party(i)));
  }
  auto pair_count = [&](std::size_t i, std::size_t j, std::size_t k) {
    const int twice = n - rk[k] - d.g - d.local_dims[i] - d.local_dims[j];
    if (twice < 0 || twice % 2 != 0) throw std::logic_error("bell_counts: inconsistent decomposition");
    return twice / 2;
  };
  d.n_ab = pair_count(0, 1, 2);
  d.n_bc = pair_count(1, 2, 0);
  d.n_ac = pair_count(0, 2, 1);
  return d;
}

}  // namespace ghz
