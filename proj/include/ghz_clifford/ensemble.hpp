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
#include <cmath>
#include <cstddef>
#include <exception>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "ghz_clifford/circuit.hpp"
#include "ghz_clifford/partition.hpp"
#include "ghz_clifford/rng.hpp"

namespace ghz {

struct EnsembleSpec {
  CircuitConfig circuit;
  std::vector<Partition> partitions;
  std::size_t n_trajectories = 1;
  unsigned observables = kGhzIndex;
  RecordMode mode = RecordMode::steady_state;

  void validate() const {
    circuit.validate();
    check_compatible(circuit, partitions);
    if (n_trajectories == 0) throw std::invalid_argument("EnsembleSpec: n_trajectories must be positive");
    if (partitions.empty()) throw std::invalid_argument("EnsembleSpec: no partitions");
  }
};

/// Ensemble statistics of one observable for one partition. In dynamics mode
/// the vectors run over EnsembleResult::layers; in steady-state mode they hold
/// a single entry: the time-then-ensemble mean over the window, the
/// fixed-layer ensemble variance averaged over the window, and the standard
/// error of the per-trajectory window averages.
struct SeriesStatistics {
  std::string name;
  std::size_t partition = 0;
  std::vector<double> mean;
  std::vector<double> variance;
  std::vector<double> std_error;
  /// Steady-state mode: window average of every trajectory, in trajectory order.
  std::vector<double> trajectory_means;

  friend bool operator==(const SeriesStatistics&, const SeriesStatistics&) = default;
};

struct EnsembleResult {
  RecordMode mode = RecordMode::steady_state;
  std::size_t n_qubits = 0;
  std::size_t n_trajectories = 0;
  /// Recorded layers (dynamics) or the window layers (steady state).
  std::vector<std::size_t> layers;
  std::vector<SeriesStatistics> series;

  const SeriesStatistics& find(std::string_view name, std::size_t partition = 0) const {
    for (const auto& s : series) {
      if (s.name == name && s.partition == partition) return s;
    }
    throw std::out_of_range("EnsembleResult: no series '" + std::string(name) + "' for partition " +
                            std::to_string(partition));
  }

  double tau(std::size_t i) const { return static_cast<double>(layers.at(i)) / static_cast<double>(n_qubits); }

  friend bool operator==(const EnsembleResult&, const EnsembleResult&) = default;
};

namespace detail {

inline EnsembleResult aggregate(const EnsembleSpec& spec, const std::vector<TrajectoryObservables>& runs) {
  EnsembleResult res;
  res.mode = spec.mode;
  res.n_qubits = spec.circuit.n_qubits;
  res.n_trajectories = runs.size();
  res.layers = runs.front().layers;
  const std::size_t n_layers = res.layers.size();
  const double n = static_cast<double>(runs.size());
  for (std::size_t s = 0; s < runs.front().series.size(); ++s) {
    SeriesStatistics st;
    st.name = runs.front().series[s].name;
    st.partition = runs.front().series[s].partition;
    std::vector<double> mean(n_layers, 0.0), var(n_layers, 0.0);
    for (const auto& r : runs) {
      for (std::size_t j = 0; j < n_layers; ++j) mean[j] += r.series[s].values[j];
    }
    for (auto& m : mean) m /= n;
    for (const auto& r : runs) {
      for (std::size_t j = 0; j < n_layers; ++j) {
        const double d = r.series[s].values[j] - mean[j];
        var[j] += d * d;
      }
    }
    for (auto& v : var) v = runs.size() > 1 ? v / (n - 1) : 0.0;

    if (spec.mode == RecordMode::dynamics) {
      st.mean = mean;
      st.variance = var;
      st.std_error.resize(n_layers);
      for (std::size_t j = 0; j < n_layers; ++j) st.std_error[j] = std::sqrt(var[j] / n);
    } else {
      double grand = 0.0, avg_var = 0.0;
      for (std::size_t j = 0; j < n_layers; ++j) {
        grand += mean[j];
        avg_var += var[j];
      }
      grand /= static_cast<double>(n_layers);
      avg_var /= static_cast<double>(n_layers);
      st.trajectory_means.reserve(runs.size());
      double spread = 0.0;
      for (const auto& r : runs) {
        double m = 0.0;
        for (int v : r.series[s].values) m += v;
        m /= static_cast<double>(n_layers);
        st.trajectory_means.push_back(m);
        spread += (m - grand) * (m - grand);
      }
      spread = runs.size() > 1 ? spread / (n - 1) : 0.0;
      st.mean = {grand};
      st.variance = {avg_var};
      st.std_error = {std::sqrt(spread / n)};
    }
    res.series.push_back(std::move(st));
  }
  return res;
}

}  // namespace detail

/// Runs spec.n_trajectories trajectories, trajectory k seeded with
/// Rng::child(seed, k), on `workers` threads with static block assignment.
/// Aggregation runs in trajectory order, so the result does not depend on
/// the worker count.
inline EnsembleResult run_ensemble(const EnsembleSpec& spec, std::size_t workers = 1) {
  spec.validate();
  const std::size_t n = spec.n_trajectories;
  workers = std::clamp<std::size_t>(workers, 1, n);
  std::vector<TrajectoryObservables> runs(n);
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](std::size_t w) {
    try {
      for (std::size_t k = w * n / workers; k < (w + 1) * n / workers; ++k) {
        Rng rng = Rng::child(spec.circuit.seed, k);
        runs[k] = run_trajectory(spec.circuit, spec.partitions, rng, spec.observables, spec.mode);
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return detail::aggregate(spec, runs);
}

struct BirthDeath {
  std::optional<double> birth;
  std::optional<double> death;
};

/// Half the peak of the ensemble mean of a dynamics series, or 0.5 when the
/// peak stays below 0.5 (no plateau).
inline double adaptive_threshold(const EnsembleResult& result, std::string_view name = "g3", std::size_t partition = 0) {
  const auto& m = result.find(name, partition).mean;
  const double peak = m.empty() ? 0.0 : *std::max_element(m.begin(), m.end());
  return peak >= 0.5 ? 0.5 * peak : 0.5;
}

/// Birth: first tau = t/N with mean >= threshold. Death: first later tau from
/// which the mean stays below threshold until the end of the run.
inline BirthDeath birth_death_times(const EnsembleResult& result, double threshold, std::string_view name = "g3",
                                    std::size_t partition = 0) {
  if (result.mode != RecordMode::dynamics) throw std::invalid_argument("birth_death_times: needs a dynamics-mode result");
  const auto& m = result.find(name, partition).mean;
  BirthDeath bd;
  std::size_t born = m.size();
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] >= threshold) {
      born = i;
      break;
    }
  }
  if (born == m.size()) return bd;
  bd.birth = result.tau(born);
  std::size_t last_above = born;
  for (std::size_t i = born; i < m.size(); ++i) {
    if (m[i] >= threshold) last_above = i;
  }
  if (last_above + 1 < m.size()) bd.death = result.tau(last_above + 1);
  return bd;
}

}  // namespace ghz
