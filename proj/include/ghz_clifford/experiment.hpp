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
#include <bit>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "ghz_clifford/circuit.hpp"
#include "ghz_clifford/ensemble.hpp"
#include "ghz_clifford/partition.hpp"
#include "ghz_clifford/rng.hpp"
#include "ghz_clifford/scaling.hpp"
#include "json.hpp"

namespace ghz {

/// Malformed or inconsistent experiment configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::vector<std::size_t> n_qubits;
  std::vector<double> meas_prob;
  Boundary boundary = Boundary::open;
  std::size_t depth_layers = 0;
  std::uint64_t seed = 0;

  PartitionConfig partition = PartitionConfig::config1;
  /// Fractions for config1..3.
  std::vector<double> parameters;
  /// Party ratios for custom partitions.
  std::vector<std::size_t> ratios;
  std::size_t n_parties = 3;

  std::size_t n_trajectories = 1;
  RecordMode mode = RecordMode::steady_state;
  std::size_t record_stride = 1;
  unsigned observables = kGhzIndex;

  std::string output_dir = "out";
  bool write_csv = true;
  bool write_json = false;
};

inline std::string_view to_string(RecordMode m) { return m == RecordMode::dynamics ? "dynamics" : "steady_state"; }

inline std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <class T>
T parse_scalar(const std::string& key, const std::string& text) {
  std::istringstream in(text);
  T v{};
  if constexpr (std::is_unsigned_v<T>) {
    if (!text.empty() && text.front() == '-') throw ConfigError(key + ": expected a non-negative integer, got '" + text + "'");
  }
  in >> v;
  if (in.fail() || !(in >> std::ws).eof()) throw ConfigError(key + ": cannot parse '" + text + "'");
  return v;
}

template <class T>
std::vector<T> parse_list(const std::string& key, const std::string& text) {
  std::vector<T> out;
  for (const auto& item : split(text, ',')) {
    if (item.empty()) throw ConfigError(key + ": empty list entry");
    out.push_back(parse_scalar<T>(key, item));
  }
  return out;
}

inline unsigned parse_observables(const std::string& text) {
  unsigned mask = 0;
  for (const auto& item : split(text, ',')) {
    if (item == "g" || item == "g_n" || item == "ghz") {
      mask |= kGhzIndex;
    } else if (item == "bell_counts") {
      mask |= kBellCounts;
    } else if (item == "entropy") {
      mask |= kEntropy;
    } else if (item == "mutual_information") {
      mask |= kMutualInformation;
    } else {
      throw ConfigError("ensemble.observables: unknown observable '" + item + "'");
    }
  }
  return mask;
}

}  // namespace detail

/// Reads an INI-style experiment file with sections [circuit], [partition],
/// [ensemble] and [output]. List values (comma separated) are sweeps. Every
/// key must be known.
inline ExperimentConfig parse_experiment(std::istream& in) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config syntax: ") + e.what());
  }
  static const std::map<std::string, std::set<std::string>> known = {
      {"circuit", {"n_qubits", "meas_prob", "boundary", "depth_layers", "seed"}},
      {"partition", {"config", "parameter", "ratios", "n_parties"}},
      {"ensemble", {"n_trajectories", "mode", "record_stride", "observables"}},
      {"output", {"directory", "formats"}},
  };
  for (const auto& [section, body] : tree) {
    const auto it = known.find(section);
    if (it == known.end()) throw ConfigError("unknown section [" + section + "]");
    if (!body.data().empty()) throw ConfigError("key '" + section + "' outside any section");
    for (const auto& [key, value] : body) {
      if (!it->second.count(key)) throw ConfigError("unknown key " + section + "." + key);
    }
  }
  auto get = [&](const std::string& path) -> std::optional<std::string> {
    if (auto v = tree.get_optional<std::string>(pt::ptree::path_type(path, '.'))) return detail::trim(*v);
    return std::nullopt;
  };
  auto require = [&](const std::string& path) {
    auto v = get(path);
    if (!v || v->empty()) throw ConfigError("missing required key " + path);
    return *v;
  };

  ExperimentConfig c;
  c.n_qubits = detail::parse_list<std::size_t>("circuit.n_qubits", require("circuit.n_qubits"));
  c.meas_prob = get("circuit.meas_prob") ? detail::parse_list<double>("circuit.meas_prob", *get("circuit.meas_prob"))
                                         : std::vector<double>{0.0};
  try {
    if (auto v = get("circuit.boundary")) c.boundary = parse_boundary(*v);
    if (auto v = get("partition.config")) c.partition = parse_partition_config(*v);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (auto v = get("circuit.depth_layers")) c.depth_layers = detail::parse_scalar<std::size_t>("circuit.depth_layers", *v);
  if (auto v = get("circuit.seed")) c.seed = detail::parse_scalar<std::uint64_t>("circuit.seed", *v);

  if (auto v = get("partition.n_parties")) c.n_parties = detail::parse_scalar<std::size_t>("partition.n_parties", *v);
  if (c.partition == PartitionConfig::custom) {
    if (get("partition.parameter")) throw ConfigError("partition.parameter is not used by custom partitions; use ratios");
    for (const auto& r : detail::split(require("partition.ratios"), ':')) {
      c.ratios.push_back(detail::parse_scalar<std::size_t>("partition.ratios", r));
    }
    if (!get("partition.n_parties")) c.n_parties = c.ratios.size();
    if (c.ratios.size() != c.n_parties) throw ConfigError("partition.ratios does not match partition.n_parties");
    if (std::count(c.ratios.begin(), c.ratios.end(), 0u)) throw ConfigError("partition.ratios entries must be positive");
  } else {
    if (get("partition.ratios")) throw ConfigError("partition.ratios is only used by custom partitions");
    if (c.n_parties != 3) throw ConfigError("partition.n_parties must be 3 for " + std::string(to_string(c.partition)));
    c.parameters = detail::parse_list<double>("partition.parameter", require("partition.parameter"));
    for (double f : c.parameters) {
      if (!(f > 0.0 && f < 1.0)) throw ConfigError("partition.parameter must lie in (0, 1)");
    }
  }

  if (auto v = get("ensemble.n_trajectories")) c.n_trajectories = detail::parse_scalar<std::size_t>("ensemble.n_trajectories", *v);
  if (auto v = get("ensemble.mode")) {
    if (*v == "steady_state") {
      c.mode = RecordMode::steady_state;
    } else if (*v == "dynamics") {
      c.mode = RecordMode::dynamics;
    } else {
      throw ConfigError("ensemble.mode must be steady_state or dynamics, got '" + *v + "'");
    }
  }
  if (auto v = get("ensemble.record_stride")) c.record_stride = detail::parse_scalar<std::size_t>("ensemble.record_stride", *v);
  if (auto v = get("ensemble.observables")) c.observables = detail::parse_observables(*v);

  if (auto v = get("output.directory")) c.output_dir = *v;
  if (auto v = get("output.formats")) {
    c.write_csv = c.write_json = false;
    for (const auto& f : detail::split(*v, ',')) {
      if (f == "csv") {
        c.write_csv = true;
      } else if (f == "json") {
        c.write_json = true;
      } else {
        throw ConfigError("output.formats: unknown format '" + f + "'");
      }
    }
  }
  return c;
}

inline ExperimentConfig load_experiment(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  return parse_experiment(in);
}

/// One (N, p, partition) combination of a sweep.
struct RunPoint {
  EnsembleSpec spec;
  /// Realized fraction for config1..3 (party sizes are integers); 0 for
  /// custom partitions.
  double parameter = 0;
  std::string partition_label;
  std::string stem;
};

/// Seed of one sweep point, derived from the master seed and the point's
/// coordinates so that it does not depend on the other sweep entries.
inline std::uint64_t point_seed(std::uint64_t master, std::size_t n, double p, double parameter) {
  Rng r = Rng::child(master, n);
  Rng s = Rng::child(r(), std::bit_cast<std::uint64_t>(p) ^ std::rotl(std::bit_cast<std::uint64_t>(parameter), 17));
  return s();
}

/// Cartesian product N x p x parameter, in that nesting order. Requested
/// fractions that round to the same party sizes collapse into one point.
inline std::vector<RunPoint> expand(const ExperimentConfig& c) {
  std::vector<RunPoint> points;
  const std::vector<double> params = c.partition == PartitionConfig::custom ? std::vector<double>{0.0} : c.parameters;
  for (std::size_t n : c.n_qubits) {
    for (double p : c.meas_prob) {
      for (double f : params) {
        RunPoint pt;
        try {
          if (c.partition == PartitionConfig::custom) {
            pt.spec.partitions = {Partition::from_ratios(n, c.ratios)};
            std::string label;
            for (std::size_t i = 0; i < c.ratios.size(); ++i) label += (i ? ":" : "") + std::to_string(c.ratios[i]);
            pt.partition_label = label;
          } else {
            pt.spec.partitions = {Partition::for_config(c.partition, n, f)};
            pt.parameter = pt.spec.partitions.front().parameter();
            pt.partition_label = format_number(pt.parameter);
          }
        } catch (const std::invalid_argument& e) {
          throw ConfigError(e.what());
        }
        CircuitConfig& cc = pt.spec.circuit;
        cc.n_qubits = n;
        cc.meas_prob = p;
        cc.boundary = c.boundary;
        cc.depth_layers = c.depth_layers;
        cc.record_stride = c.record_stride;
        cc.seed = point_seed(c.seed, n, p, pt.parameter);
        pt.spec.n_trajectories = c.n_trajectories;
        pt.spec.observables = c.observables;
        pt.spec.mode = c.mode;
        try {
          pt.spec.validate();
        } catch (const std::invalid_argument& e) {
          throw ConfigError(e.what());
        }
        char buf[128];
        std::string label = pt.partition_label;
        std::replace(label.begin(), label.end(), ':', '-');
        std::snprintf(buf, sizeof buf, "N%zu_p%.4f_%s_%s", n, p, std::string(to_string(c.partition)).c_str(), label.c_str());
        pt.stem = buf;
        if (std::none_of(points.begin(), points.end(), [&](const RunPoint& q) { return q.stem == pt.stem; })) {
          points.push_back(std::move(pt));
        }
      }
    }
  }
  return points;
}

inline constexpr std::string_view kCsvHeader = "N,p,boundary,config,partition_param,t,tau,observable,mean,variance,stderr,n_traj,seed";

/// One row per (layer, observable); steady-state rows carry t = tau = -1.
inline void write_csv(std::ostream& out, const RunPoint& pt, const EnsembleResult& r) {
  out << kCsvHeader << '\n';
  const CircuitConfig& cc = pt.spec.circuit;
  const std::string prefix = std::to_string(cc.n_qubits) + "," + format_number(cc.meas_prob) + "," +
                             std::string(to_string(cc.boundary)) + "," +
                             std::string(to_string(pt.spec.partitions.front().config())) + "," + pt.partition_label + ",";
  const std::string suffix = "," + std::to_string(r.n_trajectories) + "," + std::to_string(cc.seed) + "\n";
  auto row = [&](const std::string& t, const std::string& tau, const SeriesStatistics& s, std::size_t j) {
    out << prefix << t << ',' << tau << ',' << s.name << ',' << format_number(s.mean[j]) << ','
        << format_number(s.variance[j]) << ',' << format_number(s.std_error[j]) << suffix;
  };
  if (r.mode == RecordMode::steady_state) {
    for (const auto& s : r.series) row("-1", "-1", s, 0);
  } else {
    for (std::size_t j = 0; j < r.layers.size(); ++j) {
      for (const auto& s : r.series) row(std::to_string(r.layers[j]), format_number(r.tau(j)), s, j);
    }
  }
}

inline nlohmann::ordered_json to_json(const ExperimentConfig& c) {
  nlohmann::ordered_json j;
  j["circuit"] = {{"n_qubits", c.n_qubits},
                  {"meas_prob", c.meas_prob},
                  {"boundary", std::string(to_string(c.boundary))},
                  {"depth_layers", c.depth_layers},
                  {"seed", c.seed}};
  j["partition"] = {{"config", std::string(to_string(c.partition))},
                    {"parameter", c.parameters},
                    {"ratios", c.ratios},
                    {"n_parties", c.n_parties}};
  std::vector<std::string> obs;
  if (c.observables & kGhzIndex) obs.push_back("g_n");
  if (c.observables & kBellCounts) obs.push_back("bell_counts");
  if (c.observables & kEntropy) obs.push_back("entropy");
  if (c.observables & kMutualInformation) obs.push_back("mutual_information");
  j["ensemble"] = {{"n_trajectories", c.n_trajectories},
                   {"mode", std::string(to_string(c.mode))},
                   {"record_stride", c.record_stride},
                   {"observables", obs}};
  std::vector<std::string> formats;
  if (c.write_csv) formats.push_back("csv");
  if (c.write_json) formats.push_back("json");
  j["output"] = {{"directory", c.output_dir}, {"formats", formats}};
  return j;
}

inline nlohmann::ordered_json to_json(const EnsembleResult& r) {
  nlohmann::ordered_json j;
  j["mode"] = std::string(to_string(r.mode));
  j["n_qubits"] = r.n_qubits;
  j["n_trajectories"] = r.n_trajectories;
  j["layers"] = r.layers;
  j["series"] = nlohmann::ordered_json::array();
  for (const auto& s : r.series) {
    j["series"].push_back({{"observable", s.name},
                           {"partition", s.partition},
                           {"mean", s.mean},
                           {"variance", s.variance},
                           {"stderr", s.std_error}});
  }
  return j;
}

inline nlohmann::ordered_json to_json(const CollapseFit& f) {
  nlohmann::ordered_json j;
  j["critical_value"] = f.critical_value;
  j["exponent"] = f.exponent;
  j["quality"] = f.quality;
  j["uncertainty"] = {{"critical_value", f.critical_uncertainty}, {"exponent", f.exponent_uncertainty}};
  j["window"] = f.window;
  j["n_points"] = f.n_points;
  return j;
}

struct CsvRow {
  std::size_t n = 0;
  double p = 0;
  std::string boundary;
  std::string config;
  std::string partition_param;
  long t = -1;
  double tau = -1;
  std::string observable;
  double mean = 0;
  double variance = 0;
  double std_error = 0;
  std::size_t n_traj = 0;
  std::uint64_t seed = 0;
};

/// Parses a file written by write_csv; throws ConfigError on schema mismatch.
inline std::vector<CsvRow> read_csv(std::istream& in, const std::string& origin = "csv") {
  std::string line;
  if (!std::getline(in, line) || detail::trim(line) != kCsvHeader) throw ConfigError(origin + ": unexpected CSV header");
  std::vector<CsvRow> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::trim(line).empty()) continue;
    const auto f = detail::split(line, ',');
    if (f.size() != 13) throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected 13 fields");
    const std::string where = origin + ":" + std::to_string(lineno);
    CsvRow r;
    r.n = detail::parse_scalar<std::size_t>(where, f[0]);
    r.p = detail::parse_scalar<double>(where, f[1]);
    r.boundary = f[2];
    r.config = f[3];
    r.partition_param = f[4];
    r.t = detail::parse_scalar<long>(where, f[5]);
    r.tau = detail::parse_scalar<double>(where, f[6]);
    r.observable = f[7];
    r.mean = detail::parse_scalar<double>(where, f[8]);
    r.variance = detail::parse_scalar<double>(where, f[9]);
    r.std_error = detail::parse_scalar<double>(where, f[10]);
    r.n_traj = detail::parse_scalar<std::size_t>(where, f[11]);
    r.seed = detail::parse_scalar<std::uint64_t>(where, f[12]);
    rows.push_back(std::move(r));
  }
  return rows;
}

enum class ScalingAxis { p, partition_param, tau };

inline ScalingAxis parse_scaling_axis(std::string_view s) {
  if (s == "p") return ScalingAxis::p;
  if (s == "partition_param") return ScalingAxis::partition_param;
  if (s == "tau") return ScalingAxis::tau;
  throw std::invalid_argument("unknown scaling axis '" + std::string(s) + "' (p, partition_param, tau)");
}

/// Groups rows of one observable by N into scaling curves. The tau axis uses
/// dynamics rows, the other axes steady-state rows. Standard errors are
/// floored at 1/n_traj so that exactly flat points keep a finite weight.
inline ScalingCurveSet curves_from_rows(const std::vector<CsvRow>& rows, std::string_view observable, ScalingAxis axis) {
  std::map<std::size_t, ScalingCurve> by_size;
  for (const auto& r : rows) {
    if (r.observable != observable) continue;
    if ((axis == ScalingAxis::tau) != (r.t >= 0)) continue;
    double x = r.p;
    if (axis == ScalingAxis::tau) x = r.tau;
    if (axis == ScalingAxis::partition_param) x = detail::parse_scalar<double>("partition_param", r.partition_param);
    auto& c = by_size[r.n];
    c.size = static_cast<double>(r.n);
    const double floor = r.n_traj > 0 ? 1.0 / static_cast<double>(r.n_traj) : 1.0;
    c.points.push_back({x, r.mean, std::max(r.std_error, floor), {}});
  }
  ScalingCurveSet out;
  for (auto& [n, c] : by_size) out.push_back(std::move(c));
  return out;
}

}  // namespace ghz
