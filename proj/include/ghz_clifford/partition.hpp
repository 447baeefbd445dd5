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
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ghz {

enum class Boundary { open, periodic };

inline std::string_view to_string(Boundary b) { return b == Boundary::open ? "open" : "periodic"; }

inline Boundary parse_boundary(std::string_view s) {
  if (s == "open") return Boundary::open;
  if (s == "periodic") return Boundary::periodic;
  throw std::invalid_argument("unknown boundary '" + std::string(s) + "'");
}

/// Tripartition families. config1: [A|B|C] with N_A = N_C, open boundary,
/// parameter N_B/N. config2: [A|B|C] with N_B = N_C, open, parameter N_A/N.
/// config3: as config2 on a ring.
enum class PartitionConfig { config1, config2, config3, custom };

inline std::string_view to_string(PartitionConfig c) {
  switch (c) {
    case PartitionConfig::config1: return "config1";
    case PartitionConfig::config2: return "config2";
    case PartitionConfig::config3: return "config3";
    case PartitionConfig::custom: return "custom";
  }
  return "custom";
}

inline PartitionConfig parse_partition_config(std::string_view s) {
  if (s == "config1") return PartitionConfig::config1;
  if (s == "config2") return PartitionConfig::config2;
  if (s == "config3") return PartitionConfig::config3;
  if (s == "custom") return PartitionConfig::custom;
  throw std::invalid_argument("unknown partition config '" + std::string(s) + "'");
}

/// Assignment of every qubit to one of n parties labelled 0..n-1.
class Partition {
 public:
  /// Validates that every label in 0..n-1 is used and nothing else appears.
  explicit Partition(std::vector<std::uint32_t> labels, PartitionConfig config = PartitionConfig::custom,
                     double parameter = 0.0)
      : labels_(std::move(labels)), config_(config), parameter_(parameter) {
    if (labels_.empty()) throw std::invalid_argument("Partition: no qubits");
    n_parties_ = *std::max_element(labels_.begin(), labels_.end()) + 1;
    if (n_parties_ < 2) throw std::invalid_argument("Partition: need at least two parties");
    parties_.assign(n_parties_, {});
    for (std::size_t q = 0; q < labels_.size(); ++q) parties_[labels_[q]].push_back(q);
    for (std::size_t i = 0; i < n_parties_; ++i) {
      if (parties_[i].empty()) throw std::invalid_argument("Partition: party " + std::to_string(i) + " is empty");
    }
  }

  /// Contiguous blocks of the given sizes, left to right.
  static Partition contiguous(const std::vector<std::size_t>& sizes, PartitionConfig config = PartitionConfig::custom,
                              double parameter = 0.0) {
    std::vector<std::uint32_t> labels;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      if (sizes[i] == 0) throw std::invalid_argument("Partition: party " + std::to_string(i) + " is empty");
      labels.insert(labels.end(), sizes[i], static_cast<std::uint32_t>(i));
    }
    return Partition(std::move(labels), config, parameter);
  }

  /// [A|B|C] with N_A = N_C = (N - N_B) / 2.
  static Partition config1(std::size_t n, std::size_t n_b) {
    if (n_b == 0 || n_b >= n || (n - n_b) % 2 != 0) {
      throw std::invalid_argument("Partition::config1: need 0 < N_B < N with N - N_B even (N=" + std::to_string(n) +
                                  ", N_B=" + std::to_string(n_b) + ")");
    }
    const std::size_t side = (n - n_b) / 2;
    return contiguous({side, n_b, side}, PartitionConfig::config1, static_cast<double>(n_b) / static_cast<double>(n));
  }

  /// [A|B|C] with N_B = N_C = (N - N_A) / 2; config3 is the periodic variant.
  static Partition config2(std::size_t n, std::size_t n_a, bool periodic = false) {
    if (n_a == 0 || n_a >= n || (n - n_a) % 2 != 0) {
      throw std::invalid_argument("Partition::config2: need 0 < N_A < N with N - N_A even (N=" + std::to_string(n) +
                                  ", N_A=" + std::to_string(n_a) + ")");
    }
    const std::size_t side = (n - n_a) / 2;
    return contiguous({n_a, side, side}, periodic ? PartitionConfig::config3 : PartitionConfig::config2,
                      static_cast<double>(n_a) / static_cast<double>(n));
  }
  static Partition config3(std::size_t n, std::size_t n_a) { return config2(n, n_a, true); }

  /// Contiguous n-partition with party sizes proportional to `ratios`; sizes are
  /// exact only when N is divisible by the ratio sum.
  static Partition from_ratios(std::size_t n, const std::vector<std::size_t>& ratios) {
    const std::size_t total = std::accumulate(ratios.begin(), ratios.end(), std::size_t{0});
    if (total == 0 || n % total != 0) {
      throw std::invalid_argument("Partition::from_ratios: N=" + std::to_string(n) + " not divisible by ratio sum " +
                                  std::to_string(total));
    }
    std::vector<std::size_t> sizes;
    for (std::size_t r : ratios) sizes.push_back(r * (n / total));
    return contiguous(sizes);
  }

  /// Family member for a fractional parameter: the marked party gets the
  /// size nearest to fraction * N that keeps the other two parties equal
  /// (ties resolve to the smaller size).
  static Partition for_config(PartitionConfig config, std::size_t n, double fraction) {
    const std::size_t marked = nearest_marked_size(n, fraction);
    switch (config) {
      case PartitionConfig::config1: return config1(n, marked);
      case PartitionConfig::config2: return config2(n, marked);
      case PartitionConfig::config3: return config3(n, marked);
      case PartitionConfig::custom: break;
    }
    throw std::invalid_argument("Partition::for_config: custom partitions have no fractional parameter");
  }

  static std::size_t nearest_marked_size(std::size_t n, double fraction) {
    if (!(fraction > 0.0 && fraction < 1.0)) throw std::invalid_argument("partition parameter must lie in (0, 1)");
    const double target = fraction * static_cast<double>(n);
    std::size_t best = 0;
    double best_dist = 1e300;
    for (std::size_t m = (n % 2 == 0 ? 2 : 1); m < n; m += 2) {
      const double d = std::abs(static_cast<double>(m) - target);
      if (d < best_dist - 1e-9) {
        best = m;
        best_dist = d;
      }
    }
    if (best == 0) throw std::invalid_argument("partition parameter leaves an empty party");
    return best;
  }

  std::size_t n_qubits() const noexcept { return labels_.size(); }
  std::size_t n_parties() const noexcept { return n_parties_; }
  std::uint32_t label(std::size_t q) const noexcept { return labels_[q]; }
  const std::vector<std::uint32_t>& labels() const noexcept { return labels_; }
  const std::vector<std::size_t>& party(std::size_t i) const { return parties_.at(i); }
  std::size_t party_size(std::size_t i) const { return parties_.at(i).size(); }
  PartitionConfig config() const noexcept { return config_; }
  double parameter() const noexcept { return parameter_; }

  std::size_t min_party_size() const {
    std::size_t m = labels_.size();
    for (const auto& p : parties_) m = std::min(m, p.size());
    return m;
  }

  /// Qubits outside party i.
  std::vector<std::size_t> complement(std::size_t i) const {
    std::vector<std::size_t> out;
    for (std::size_t q = 0; q < labels_.size(); ++q) {
      if (labels_[q] != i) out.push_back(q);
    }
    return out;
  }

  /// Coarse-grained partition with parties i and j merged; remaining labels
  /// keep their relative order.
  Partition merged(std::size_t i, std::size_t j) const {
    if (i == j || i >= n_parties_ || j >= n_parties_) throw std::invalid_argument("Partition::merged: bad party pair");
    if (n_parties_ == 2) throw std::invalid_argument("Partition::merged: cannot merge a bipartition");
    const std::size_t keep = std::min(i, j), drop = std::max(i, j);
    std::vector<std::uint32_t> labels(labels_.size());
    for (std::size_t q = 0; q < labels_.size(); ++q) {
      std::uint32_t l = labels_[q];
      if (l == drop) l = static_cast<std::uint32_t>(keep);
      else if (l > drop) --l;
      labels[q] = l;
    }
    return Partition(std::move(labels));
  }

  /// Boundary condition a configuration tag requires, if any.
  std::optional<Boundary> required_boundary() const noexcept {
    switch (config_) {
      case PartitionConfig::config1:
      case PartitionConfig::config2: return Boundary::open;
      case PartitionConfig::config3: return Boundary::periodic;
      case PartitionConfig::custom: return std::nullopt;
    }
    return std::nullopt;
  }

  friend bool operator==(const Partition& a, const Partition& b) {
    return a.labels_ == b.labels_ && a.config_ == b.config_ && a.parameter_ == b.parameter_;
  }

 private:
  std::vector<std::uint32_t> labels_;
  std::size_t n_parties_ = 0;
  std::vector<std::vector<std::size_t>> parties_;
  PartitionConfig config_ = PartitionConfig::custom;
  double parameter_ = 0.0;
};

/// Party names A, B, C, ... used in observable names.
inline char party_name(std::size_t i) { return static_cast<char>('A' + i); }

}  // namespace ghz
