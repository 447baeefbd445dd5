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

// Command-line driver: run / sweep / collapse / oracle-check / bound.

#include <glob.h>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "ghz_clifford/dense.hpp"
#include "ghz_clifford/ensemble.hpp"
#include "ghz_clifford/experiment.hpp"
#include "ghz_clifford/oracle_check.hpp"
#include "ghz_clifford/scaling.hpp"

#ifndef GHZ_CLIFFORD_GIT_DESCRIBE
#define GHZ_CLIFFORD_GIT_DESCRIBE "unknown"
#endif

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInsufficient = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::size_t default_workers() {
  if (const char* env = std::getenv("GHZ_CLIFFORD_WORKERS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("GHZ_CLIFFORD_WORKERS must be a positive integer, got '") + env + "'");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

struct RunOptions {
  std::string config;
  std::optional<std::size_t> workers;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::vector<std::size_t> n_qubits;
  std::vector<double> meas_prob;
  std::vector<double> parameter;
};

int cmd_run(const RunOptions& o) {
  ghz::ExperimentConfig cfg = ghz::load_experiment(o.config);
  if (o.seed) cfg.seed = *o.seed;
  if (o.out) cfg.output_dir = *o.out;
  if (!o.n_qubits.empty()) cfg.n_qubits = o.n_qubits;
  if (!o.meas_prob.empty()) cfg.meas_prob = o.meas_prob;
  if (!o.parameter.empty()) {
    if (cfg.partition == ghz::PartitionConfig::custom) throw ghz::ConfigError("--parameter does not apply to custom partitions");
    cfg.parameters = o.parameter;
  }
  const auto points = ghz::expand(cfg);
  const std::size_t workers = o.workers ? *o.workers : default_workers();
  if (workers == 0) throw UsageError("--workers must be positive");

  const std::filesystem::path dir(cfg.output_dir);
  std::filesystem::create_directories(dir);
  nlohmann::ordered_json manifest;
  manifest["tool"] = "ghz_clifford";
  manifest["git_describe"] = GHZ_CLIFFORD_GIT_DESCRIBE;
  manifest["master_seed"] = cfg.seed;
  manifest["config"] = ghz::to_json(cfg);
  manifest["runs"] = nlohmann::ordered_json::array();
  for (const auto& pt : points) {
    const ghz::EnsembleResult res = ghz::run_ensemble(pt.spec, workers);
    nlohmann::ordered_json entry = {{"N", pt.spec.circuit.n_qubits},
                                    {"p", pt.spec.circuit.meas_prob},
                                    {"partition_param", pt.partition_label},
                                    {"seed", pt.spec.circuit.seed},
                                    {"files", nlohmann::ordered_json::array()}};
    if (cfg.write_csv) {
      const auto path = dir / (pt.stem + ".csv");
      std::ofstream out(path, std::ios::binary);
      ghz::write_csv(out, pt, res);
      if (!out) throw std::runtime_error("cannot write " + path.string());
      entry["files"].push_back(path.filename().string());
    }
    if (cfg.write_json) {
      const auto path = dir / (pt.stem + ".json");
      std::ofstream out(path, std::ios::binary);
      out << ghz::to_json(res).dump(2) << '\n';
      if (!out) throw std::runtime_error("cannot write " + path.string());
      entry["files"].push_back(path.filename().string());
    }
    manifest["runs"].push_back(std::move(entry));
    std::cerr << "done " << pt.stem << " (" << pt.spec.n_trajectories << " trajectories)\n";
  }
  std::ofstream mout(dir / "manifest.json", std::ios::binary);
  mout << manifest.dump(2) << '\n';
  if (!mout) throw std::runtime_error("cannot write manifest");
  return 0;
}

struct CollapseOptionsCli {
  std::vector<std::string> patterns;
  std::string observable = "g3";
  std::string axis = "p";
  std::optional<double> fix_critical;
  std::optional<double> window;
  std::size_t bootstrap = 100;
  std::uint64_t seed = 1;
  std::optional<std::string> out;
};

std::vector<std::string> expand_globs(const std::vector<std::string>& patterns) {
  std::vector<std::string> files;
  for (const auto& pat : patterns) {
    glob_t g{};
    const int rc = ::glob(pat.c_str(), 0, nullptr, &g);
    if (rc == 0) {
      for (std::size_t i = 0; i < g.gl_pathc; ++i) files.emplace_back(g.gl_pathv[i]);
    }
    ::globfree(&g);
  }
  std::sort(files.begin(), files.end());
  files.erase(std::unique(files.begin(), files.end()), files.end());
  return files;
}

int cmd_collapse(const CollapseOptionsCli& o) {
  const auto axis = ghz::parse_scaling_axis(o.axis);
  const auto files = expand_globs(o.patterns);
  if (files.empty()) {
    std::cerr << "collapse: no files match the given pattern(s)\n";
    return kExitInsufficient;
  }
  std::vector<ghz::CsvRow> rows;
  for (const auto& f : files) {
    std::ifstream in(f);
    if (!in) throw std::runtime_error("cannot read " + f);
    auto r = ghz::read_csv(in, f);
    rows.insert(rows.end(), r.begin(), r.end());
  }
  const auto curves = ghz::curves_from_rows(rows, o.observable, axis);
  ghz::CollapseOptions opt;
  opt.fix_critical = o.fix_critical;
  opt.window = o.window;
  opt.bootstrap_samples = o.bootstrap;
  opt.bootstrap_seed = o.seed;
  ghz::CollapseFit fit;
  try {
    fit = ghz::collapse_fit(curves, opt);
  } catch (const ghz::ScalingError& e) {
    std::cerr << "collapse: " << e.what() << '\n';
    return kExitInsufficient;
  }
  const std::string report = ghz::to_json(fit).dump(2);
  if (o.out) {
    std::ofstream out(*o.out, std::ios::binary);
    out << report << '\n';
    if (!out) throw std::runtime_error("cannot write " + *o.out);
  }
  std::printf("critical_value=%.6g exponent=%.6g quality=%.6g\n", fit.critical_value, fit.exponent, fit.quality);
  if (!o.out) std::cout << report << '\n';
  return 0;
}

int cmd_oracle_check(std::size_t n, std::size_t n_states, std::uint64_t seed, const std::vector<double>& probs) {
  if (n < 2 || n > ghz::dense::kMaxQubits) {
    throw UsageError("--n-qubits must lie in [2, " + std::to_string(ghz::dense::kMaxQubits) + "]");
  }
  const ghz::OracleReport rep = ghz::oracle_check(n, n_states, seed, probs);
  for (const auto& m : rep.mismatches) {
    std::printf("MISMATCH seed=%llu trajectory=%zu layer=%zu %s tableau=%g dense=%.9g\n",
                static_cast<unsigned long long>(m.seed), m.trajectory, m.layer, m.observable.c_str(), m.tableau, m.dense);
  }
  std::printf("oracle-check: %zu states, %zu comparisons, %zu mismatches\n", rep.states, rep.comparisons,
              rep.mismatches.size());
  return rep.ok() ? 0 : kExitRuntime;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monitored random Clifford circuits and multipartite GHZ entanglement"};
  app.require_subcommand(1);

  RunOptions run_opts;
  auto add_run_flags = [&](CLI::App* sub) {
    sub->add_option("--config", run_opts.config, "Experiment file")->required()->check(CLI::ExistingFile);
    sub->add_option("--workers", run_opts.workers, "Worker threads (default: GHZ_CLIFFORD_WORKERS or all cores)");
    sub->add_option("--out", run_opts.out, "Output directory (overrides [output] directory)");
    sub->add_option("--seed", run_opts.seed, "Master seed (overrides [circuit] seed)");
  };
  auto* run = app.add_subcommand("run", "Run the ensembles described by a config file");
  add_run_flags(run);
  auto* sweep = app.add_subcommand("sweep", "Like run, with sweep lists overridable on the command line");
  add_run_flags(sweep);
  sweep->add_option("--n-qubits", run_opts.n_qubits, "System sizes")->delimiter(',');
  sweep->add_option("--meas-prob", run_opts.meas_prob, "Measurement probabilities")->delimiter(',');
  sweep->add_option("--parameter", run_opts.parameter, "Partition fractions")->delimiter(',');

  CollapseOptionsCli col;
  auto* collapse = app.add_subcommand("collapse", "Finite-size-scaling collapse of sweep CSV files");
  collapse->add_option("data", col.patterns, "CSV files or glob patterns")->required();
  collapse->add_option("--observable", col.observable, "Observable column value")->capture_default_str();
  collapse->add_option("--axis", col.axis, "Control parameter: p, partition_param or tau")->capture_default_str();
  collapse->add_option("--fix-critical", col.fix_critical, "Hold the critical value fixed");
  collapse->add_option("--window", col.window, "Half-width of the fit window");
  collapse->add_option("--bootstrap", col.bootstrap, "Bootstrap resamples")->capture_default_str();
  collapse->add_option("--seed", col.seed, "Bootstrap seed")->capture_default_str();
  collapse->add_option("--out", col.out, "Write the JSON fit report here");

  std::size_t oc_n = 8, oc_states = 100;
  std::uint64_t oc_seed = 0;
  std::vector<double> oc_probs = {0.0, 0.1, 0.3};
  auto* oracle = app.add_subcommand("oracle-check", "Compare tableau observables with the dense simulator");
  oracle->add_option("--n-qubits", oc_n, "Qubits (2..12)")->capture_default_str();
  oracle->add_option("--n-states", oc_states, "Trajectories per measurement probability")->capture_default_str();
  oracle->add_option("--seed", oc_seed, "Master seed")->capture_default_str();
  oracle->add_option("--meas-prob", oc_probs, "Measurement probabilities")->delimiter(',');

  std::size_t b_n = 0;
  std::vector<std::size_t> b_sizes;
  auto* bound = app.add_subcommand("bound", "Print the typicality bound on the average GHZ_3 count");
  bound->add_option("--n-qubits", b_n, "Total qubits")->required();
  bound->add_option("--sizes", b_sizes, "Party sizes N_A,N_B,N_C")->required()->delimiter(',')->expected(3);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*run || *sweep) return cmd_run(run_opts);
    if (*collapse) return cmd_collapse(col);
    if (*oracle) return cmd_oracle_check(oc_n, oc_states, oc_seed, oc_probs);
    if (*bound) {
      double v = 0;
      try {
        v = ghz::dense::typicality_bound(b_n, b_sizes[0], b_sizes[1], b_sizes[2]);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      std::printf("%.12g\n", v);
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ghz::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
