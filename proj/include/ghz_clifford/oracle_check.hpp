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

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ghz_clifford/circuit.hpp"
#include "ghz_clifford/dense.hpp"
#include "ghz_clifford/entanglement.hpp"
#include "ghz_clifford/partition.hpp"
#include "ghz_clifford/rng.hpp"
#include "ghz_clifford/tableau.hpp"

namespace ghz {

/// Tableau and statevector evolved in lock step: gates go to both, the
/// tableau draws the measurement outcome and the dense state is projected
/// onto it after checking the Born probability (1 when deterministic, 1/2
/// otherwise).
class PairedState {
 public:
  explicit PairedState(std::size_t n) : tableau_(StabilizerTableau::product_state(n)), dense_(n) {}

  void apply(const TwoQubitClifford& g, std::size_t q1, std::size_t q2) {
    tableau_.apply(g, q1, q2);
    dense_.apply(g, q1, q2);
  }

  MeasurementOutcome measure_z(std::size_t q, Rng& rng) {
    const MeasurementOutcome m = tableau_.measure_z(q, rng);
    const double expected = m.deterministic ? 1.0 : 0.5;
    const double prob = dense_.outcome_probability(q, m.value);
    if (std::abs(prob - expected) > 1e-9) {
      throw std::logic_error("PairedState: Born probability " + std::to_string(prob) + " for a tableau outcome of weight " +
                             std::to_string(expected));
    }
    dense_.project_z(q, m.value);
    return m;
  }

  const StabilizerTableau& tableau() const noexcept { return tableau_; }
  const dense::DenseState& dense() const noexcept { return dense_; }

 private:
  StabilizerTableau tableau_;
  dense::DenseState dense_;
};

struct OracleMismatch {
  std::size_t trajectory = 0;
  std::uint64_t seed = 0;
  std::size_t layer = 0;
  std::string observable;
  double tableau = 0;
  double dense = 0;
};

struct OracleReport {
  std::size_t states = 0;
  std::size_t comparisons = 0;
  std::vector<OracleMismatch> mismatches;

  bool ok() const noexcept { return mismatches.empty(); }
};

/// Contiguous partition into `parties` blocks as equal as possible (larger
/// blocks first).
inline Partition balanced_partition(std::size_t n, std::size_t parties) {
  std::vector<std::size_t> sizes(parties, n / parties);
  for (std::size_t i = 0; i < n % parties; ++i) ++sizes[i];
  return Partition::contiguous(sizes);
}

/// Compares every observable of one paired state; appends mismatches.
inline void compare_observables(const PairedState& s, std::size_t trajectory, std::uint64_t seed, std::size_t layer,
                                OracleReport& report) {
  const std::size_t n = s.tableau().n_qubits();
  auto check = [&](const std::string& name, double tab, double den) {
    ++report.comparisons;
    if (std::abs(std::round(den * 1e6) / 1e6 - tab) > 1e-9) report.mismatches.push_back({trajectory, seed, layer, name, tab, den});
  };
  ++report.states;
  std::vector<Partition> parts{balanced_partition(n, 2)};
  if (n >= 3) parts.push_back(balanced_partition(n, 3));
  if (n >= 4) parts.push_back(balanced_partition(n, 4));
  for (const Partition& p : parts) {
    const std::string tag = "(" + std::to_string(p.n_parties()) + "-party)";
    check("g" + std::to_string(p.n_parties()) + tag, ghz_index(s.tableau(), p), dense::ghz_index_dense(s.dense(), p));
    for (std::size_t i = 0; i < p.n_parties(); ++i) {
      check(std::string("S_") + party_name(i) + tag, entanglement_entropy(s.tableau(), p.party(i)),
            dense::entropy_dense(s.dense(), p.party(i)));
    }
    if (p.n_parties() == 3) {
      check("g3_replica" + tag, ghz_index(s.tableau(), p), dense::g3_replica(s.dense(), p));
      std::vector<std::size_t> ac(p.party(0).begin(), p.party(0).end());
      ac.insert(ac.end(), p.party(2).begin(), p.party(2).end());
      const double i_dense = dense::entropy_dense(s.dense(), p.party(0)) + dense::entropy_dense(s.dense(), p.party(2)) -
                             dense::entropy_dense(s.dense(), ac);
      check("I_AC" + tag, mutual_information(s.tableau(), p.party(0), p.party(2)), i_dense);
    }
  }
}

/// Runs n_trajectories monitored trajectories per measurement probability in
/// `probs` (open boundary, depth N) and compares all observables between the
/// tableau and the dense oracle after every layer. Trajectory k at
/// probability index j uses Rng::child(seed, j * n_trajectories + k).
inline OracleReport oracle_check(std::size_t n, std::size_t n_trajectories, std::uint64_t seed,
                                 const std::vector<double>& probs = {0.0, 0.1, 0.3}) {
  if (n < 2 || n > dense::kMaxQubits) {
    throw std::invalid_argument("oracle_check: n_qubits must lie in [2, " + std::to_string(dense::kMaxQubits) + "]");
  }
  OracleReport report;
  for (std::size_t j = 0; j < probs.size(); ++j) {
    CircuitConfig cfg;
    cfg.n_qubits = n;
    cfg.meas_prob = probs[j];
    cfg.seed = seed;
    for (std::size_t k = 0; k < n_trajectories; ++k) {
      const std::size_t index = j * n_trajectories + k;
      Rng rng = Rng::child(seed, index);
      PairedState state(n);
      run_layers(state, cfg, rng, [&](std::size_t t, const PairedState& s) {
        if (!s.tableau().valid()) {
          report.mismatches.push_back({index, seed, t, "tableau_invariants", 0, 0});
        }
        compare_observables(s, index, seed, t, report);
      });
    }
  }
  return report;
}

}  // namespace ghz
