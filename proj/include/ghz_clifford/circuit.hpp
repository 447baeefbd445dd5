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
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ghz_clifford/clifford_group.hpp"
#include "ghz_clifford/entanglement.hpp"
#include "ghz_clifford/partition.hpp"
#include "ghz_clifford/rng.hpp"
#include "ghz_clifford/tableau.hpp"

namespace ghz {

struct CircuitConfig {
  std::size_t n_qubits = 2;
  double meas_prob = 0.0;
  Boundary boundary = Boundary::open;
  /// Number of layers T; 0 selects the default T = N.
  std::size_t depth_layers = 0;
  std::uint64_t seed = 0;
  /// Layers between snapshots in dynamics recording.
  std::size_t record_stride = 1;
  /// Check tableau invariants after every layer (slow).
  bool verify_invariants = false;

  std::size_t depth() const noexcept { return depth_layers == 0 ? n_qubits : depth_layers; }

  void validate() const {
    if (n_qubits < 2) throw std::invalid_argument("CircuitConfig: n_qubits must be at least 2");
    if (!(meas_prob >= 0.0 && meas_prob <= 1.0)) throw std::invalid_argument("CircuitConfig: meas_prob must lie in [0, 1]");
    if (boundary == Boundary::periodic && n_qubits % 2 != 0) {
      throw std::invalid_argument("CircuitConfig: periodic boundary needs an even number of qubits");
    }
    if (record_stride == 0) throw std::invalid_argument("CircuitConfig: record_stride must be positive");
  }
};

/// First layer (1-based) of the steady-state window: the last 10% of T layers,
/// rounded up, at least one layer.
inline std::size_t steady_window_start(std::size_t depth) {
  const std::size_t width = std::max<std::size_t>(1, (depth + 9) / 10);
  return depth - width + 1;
}

enum class LevelParity { even, odd };

/// Brickwork pairs of one level: (2i, 2i+1) for even, (2i+1, 2i+2) for odd,
/// with the wrap-around pair (N-1, 0) on a ring.
inline std::vector<std::pair<std::size_t, std::size_t>> level_pairs(std::size_t n, LevelParity parity, Boundary b) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  const std::size_t start = parity == LevelParity::even ? 0 : 1;
  for (std::size_t q = start; q + 1 < n; q += 2) pairs.emplace_back(q, q + 1);
  if (parity == LevelParity::odd && b == Boundary::periodic && n % 2 == 0) pairs.emplace_back(n - 1, 0);
  return pairs;
}

struct LevelStats {
  std::size_t gates = 0;
  std::size_t measurements = 0;
  std::size_t random_outcomes = 0;
};

/// One level: uniformly random two-qubit Cliffords on the brickwork pairs,
/// left to right, then a Z measurement on each qubit with probability p,
/// left to right. Works with any state offering apply() and measure_z().
template <class State>
LevelStats step_level(State& state, LevelParity parity, const CircuitConfig& config, Rng& rng) {
  LevelStats stats;
  for (const auto& [q1, q2] : level_pairs(config.n_qubits, parity, config.boundary)) {
    state.apply(sample_uniform(rng), q1, q2);
    ++stats.gates;
  }
  if (config.meas_prob > 0.0) {
    for (std::size_t q = 0; q < config.n_qubits; ++q) {
      if (rng.uniform() < config.meas_prob) {
        const MeasurementOutcome m = state.measure_z(q, rng);
        ++stats.measurements;
        if (!m.deterministic) ++stats.random_outcomes;
      }
    }
  }
  return stats;
}

/// Runs config.depth() layers (even level then odd level) and calls
/// on_layer(t, state) after layer t = 1..T.
template <class State, class OnLayer>
void run_layers(State& state, const CircuitConfig& config, Rng& rng, OnLayer&& on_layer) {
  config.validate();
  for (std::size_t t = 1; t <= config.depth(); ++t) {
    step_level(state, LevelParity::even, config, rng);
    step_level(state, LevelParity::odd, config, rng);
    on_layer(t, state);
  }
}

/// Observable families; combine with |.
enum ObservableMask : unsigned {
  kGhzIndex = 1u << 0,
  kBellCounts = 1u << 1,
  kEntropy = 1u << 2,
  kMutualInformation = 1u << 3,
  kAllObservables = kGhzIndex | kBellCounts | kEntropy | kMutualInformation,
};

struct NamedValue {
  std::string name;
  int value;
};

/// Observables of one state for one partition. Names: g<n>; n_AB, n_BC, n_AC
/// (tripartitions only); S_<party> per party; I_AC between the first and the
/// third party (n >= 3).
inline std::vector<NamedValue> evaluate_observables(const StabilizerTableau& t, const Partition& p, unsigned mask) {
  std::vector<NamedValue> out;
  const std::size_t n = p.n_parties();
  const bool bell = (mask & kBellCounts) && n == 3;
  if (bell) {
    const GhzDecomposition d = bell_counts(t, p);
    if (mask & kGhzIndex) out.push_back({"g3", d.g});
    out.push_back({"n_AB", d.n_ab});
    out.push_back({"n_BC", d.n_bc});
    out.push_back({"n_AC", d.n_ac});
  } else if (mask & kGhzIndex) {
    out.push_back({"g" + std::to_string(n), ghz_index(t, p)});
  }
  if (mask & kEntropy) {
    for (std::size_t i = 0; i < n; ++i) {
      out.push_back({std::string("S_") + party_name(i), entanglement_entropy(t, p.party(i))});
    }
  }
  if ((mask & kMutualInformation) && n >= 3) {
    out.push_back({"I_AC", mutual_information(t, p.party(0), p.party(2))});
  }
  return out;
}

enum class RecordMode {
  /// Every layer that is a multiple of record_stride.
  dynamics,
  /// Only layers inside the steady-state window.
  steady_state,
};

struct ObservableSeries {
  std::string name;
  std::size_t partition = 0;
  std::vector<int> values;

  friend bool operator==(const ObservableSeries&, const ObservableSeries&) = default;
};

struct TrajectoryObservables {
  std::vector<std::size_t> layers;
  std::vector<ObservableSeries> series;

  friend bool operator==(const TrajectoryObservables&, const TrajectoryObservables&) = default;
};

inline void check_compatible(const CircuitConfig& config, const std::vector<Partition>& partitions) {
  for (std::size_t i = 0; i < partitions.size(); ++i) {
    const Partition& p = partitions[i];
    if (p.n_qubits() != config.n_qubits) {
      throw std::invalid_argument("partition " + std::to_string(i) + " covers " + std::to_string(p.n_qubits()) +
                                  " qubits, circuit has " + std::to_string(config.n_qubits));
    }
    if (const auto b = p.required_boundary(); b && *b != config.boundary) {
      throw std::invalid_argument("partition " + std::to_string(i) + " (" + std::string(to_string(p.config())) +
                                  ") requires a " + std::string(to_string(*b)) + " boundary");
    }
  }
}

/// One trajectory from |0...0>: T layers, observables recorded per `mode`.
inline TrajectoryObservables run_trajectory(const CircuitConfig& config, const std::vector<Partition>& partitions,
                                            Rng& rng, unsigned mask = kAllObservables,
                                            RecordMode mode = RecordMode::dynamics) {
  config.validate();
  check_compatible(config, partitions);
  TrajectoryObservables record;
  const std::size_t window = steady_window_start(config.depth());
  StabilizerTableau state = StabilizerTableau::product_state(config.n_qubits);
  run_layers(state, config, rng, [&](std::size_t t, const StabilizerTableau& s) {
    if (config.verify_invariants && !s.valid()) {
      throw std::logic_error("tableau invariants violated after layer " + std::to_string(t));
    }
    const bool take = mode == RecordMode::dynamics ? t % config.record_stride == 0 : t >= window;
    if (!take) return;
    const bool first = record.layers.empty();
    record.layers.push_back(t);
    std::size_t slot = 0;
    for (std::size_t i = 0; i < partitions.size(); ++i) {
      for (auto& nv : evaluate_observables(s, partitions[i], mask)) {
        if (first) record.series.push_back({std::move(nv.name), i, {}});
        record.series[slot++].values.push_back(nv.value);
      }
    }
  });
  return record;
}

}  // namespace ghz
