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


#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "ghz_clifford/ensemble.hpp"
#include "ghz_clifford/experiment.hpp"

namespace ghz {
namespace {

ExperimentConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_experiment(in);
}

constexpr const char* kMinimal = R"([circuit]
n_qubits = 12
meas_prob = 0.1
seed = 7
[partition]
config = config1
parameter = 0.333
[ensemble]
n_trajectories = 10
)";

TEST(Experiment, MinimalConfigAndDefaults) {
  const ExperimentConfig c = parse(kMinimal);
  EXPECT_EQ(c.n_qubits, std::vector<std::size_t>{12});
  EXPECT_EQ(c.meas_prob, std::vector<double>{0.1});
  EXPECT_EQ(c.boundary, Boundary::open);
  EXPECT_EQ(c.depth_layers, 0u);
  EXPECT_EQ(c.seed, 7u);
  EXPECT_EQ(c.partition, PartitionConfig::config1);
  EXPECT_EQ(c.n_trajectories, 10u);
  EXPECT_EQ(c.mode, RecordMode::steady_state);
  EXPECT_EQ(c.observables, kGhzIndex);
  EXPECT_TRUE(c.write_csv);
  EXPECT_FALSE(c.write_json);
}

TEST(Experiment, FullConfig) {
  const ExperimentConfig c = parse(R"([circuit]
n_qubits = 24, 48
meas_prob = 0, 0.1, 0.2
boundary = periodic
depth_layers = 100
[partition]
config = custom
ratios = 1:3:1:3
[ensemble]
mode = dynamics
record_stride = 4
observables = ghz, bell_counts, entropy, mutual_information
[output]
directory = results
formats = csv,json
)");
  EXPECT_EQ(c.n_qubits.size(), 2u);
  EXPECT_EQ(c.meas_prob.size(), 3u);
  EXPECT_EQ(c.boundary, Boundary::periodic);
  EXPECT_EQ(c.ratios, (std::vector<std::size_t>{1, 3, 1, 3}));
  EXPECT_EQ(c.n_parties, 4u);
  EXPECT_EQ(c.mode, RecordMode::dynamics);
  EXPECT_EQ(c.record_stride, 4u);
  EXPECT_EQ(c.observables, kGhzIndex | kBellCounts | kEntropy | kMutualInformation);
  EXPECT_EQ(c.output_dir, "results");
  EXPECT_TRUE(c.write_json);
  const auto j = to_json(c);
  EXPECT_EQ(j["partition"]["ratios"].size(), 4u);
  EXPECT_EQ(j["ensemble"]["mode"], "dynamics");
}

TEST(Experiment, RejectsBadInput) {
  const std::vector<std::string> bad = {
      "[circuit]\nn_qubits = 12\ncolour = red\n[partition]\nparameter = 0.5\n",
      "[circuit]\nn_qubits = 12\n[partition]\nparameter = 0.5\n[extra]\na = 1\n",
      "[circuit]\nmeas_prob = 0.1\n[partition]\nparameter = 0.5\n",
      "[circuit]\nn_qubits = 12\n[partition]\nconfig = config1\n",
      "[circuit]\nn_qubits = 12\n[partition]\nparameter = 1.5\n",
      "[circuit]\nn_qubits = -12\n[partition]\nparameter = 0.5\n",
      "[circuit]\nn_qubits = 12,,24\n[partition]\nparameter = 0.5\n",
      "[circuit]\nn_qubits = 12\nboundary = twisted\n[partition]\nparameter = 0.5\n",
      "[circuit]\nn_qubits = 12\n[partition]\nconfig = config9\nparameter = 0.5\n",
      "[circuit]\nn_qubits = 12\n[partition]\nconfig = custom\nratios = 1:0:1\n",
      "[circuit]\nn_qubits = 12\n[partition]\nconfig = custom\nratios = 1:1\nparameter = 0.5\n",
      "[circuit]\nn_qubits = 12\n[partition]\nparameter = 0.5\n[ensemble]\nmode = fast\n",
      "[circuit]\nn_qubits = 12\n[partition]\nparameter = 0.5\n[ensemble]\nobservables = magic\n",
      "[circuit]\nn_qubits = 12\n[partition]\nparameter = 0.5\n[output]\nformats = xml\n",
      "[circuit\nn_qubits = 12\n",
  };
  for (const auto& text : bad) EXPECT_THROW(parse(text), ConfigError) << text;
}

TEST(Experiment, ExpandIsACartesianProduct) {
  ExperimentConfig c = parse(R"([circuit]
n_qubits = 24, 48
meas_prob = 0, 0.1
[partition]
config = config2
parameter = 0.3, 0.6
)");
  const auto pts = expand(c);
  ASSERT_EQ(pts.size(), 8u);
  EXPECT_EQ(pts[0].spec.circuit.n_qubits, 24u);
  EXPECT_EQ(pts[7].spec.circuit.n_qubits, 48u);
  EXPECT_DOUBLE_EQ(pts[1].spec.circuit.meas_prob, 0.0);
  EXPECT_DOUBLE_EQ(pts[2].spec.circuit.meas_prob, 0.1);
  std::set<std::string> stems;
  std::set<std::uint64_t> seeds;
  for (const auto& p : pts) {
    stems.insert(p.stem);
    seeds.insert(p.spec.circuit.seed);
    EXPECT_EQ(p.spec.partitions.front().config(), PartitionConfig::config2);
    EXPECT_NEAR(p.parameter, p.spec.partitions.front().parameter(), 0.0);
  }
  EXPECT_EQ(stems.size(), 8u);
  EXPECT_EQ(seeds.size(), 8u);
  EXPECT_EQ(pts[0].stem, "N24_p0.0000_config2_0.333333333333");

  // Seeds of a point do not depend on the rest of the sweep.
  c.n_qubits = {48};
  c.meas_prob = {0.1};
  c.parameters = {0.6};
  EXPECT_EQ(expand(c).front().spec.circuit.seed, pts[7].spec.circuit.seed);
}

TEST(Experiment, ExpandMergesFractionsWithTheSameSizes) {
  ExperimentConfig c = parse("[circuit]\nn_qubits = 12\n[partition]\nparameter = 0.33, 0.34, 0.5\n");
  const auto pts = expand(c);
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_DOUBLE_EQ(pts[0].parameter, 4.0 / 12.0);
  EXPECT_DOUBLE_EQ(pts[1].parameter, 6.0 / 12.0);
}

TEST(Experiment, ExpandReportsIncompatibleSizes) {
  EXPECT_THROW(expand(parse("[circuit]\nn_qubits = 10\n[partition]\nconfig = custom\nratios = 1:1:1\n")), ConfigError);
  EXPECT_THROW(expand(parse("[circuit]\nn_qubits = 11\nboundary = periodic\n[partition]\nparameter = 0.3\n")),
               ConfigError);
  const auto custom = expand(parse("[circuit]\nn_qubits = 16\n[partition]\nconfig = custom\nratios = 1:3:1:3\n"));
  ASSERT_EQ(custom.size(), 1u);
  EXPECT_EQ(custom[0].stem, "N16_p0.0000_custom_1-3-1-3");
  EXPECT_EQ(custom[0].spec.partitions[0].n_parties(), 4u);
}

TEST(Experiment, CsvRoundTrip) {
  for (const char* mode : {"steady_state", "dynamics"}) {
    ExperimentConfig c = parse(std::string(kMinimal) + "mode = " + mode + "\nobservables = g, bell_counts\n");
    const RunPoint pt = expand(c).front();
    const EnsembleResult r = run_ensemble(pt.spec);
    std::stringstream buf;
    write_csv(buf, pt, r);
    const auto rows = read_csv(buf);
    const std::size_t n_series = r.series.size();
    ASSERT_EQ(rows.size(), n_series * (r.mode == RecordMode::dynamics ? r.layers.size() : 1));
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const auto& row = rows[k];
      const auto& s = r.series[k % n_series];
      const std::size_t j = r.mode == RecordMode::dynamics ? k / n_series : 0;
      EXPECT_EQ(row.n, 12u);
      EXPECT_DOUBLE_EQ(row.p, 0.1);
      EXPECT_EQ(row.boundary, "open");
      EXPECT_EQ(row.config, "config1");
      EXPECT_EQ(row.partition_param, "0.333333333333");
      EXPECT_EQ(row.observable, s.name);
      EXPECT_NEAR(row.mean, s.mean[j], 1e-11);
      EXPECT_NEAR(row.variance, s.variance[j], 1e-11);
      EXPECT_NEAR(row.std_error, s.std_error[j], 1e-11);
      EXPECT_EQ(row.n_traj, 10u);
      EXPECT_EQ(row.seed, pt.spec.circuit.seed);
      if (r.mode == RecordMode::dynamics) {
        EXPECT_EQ(row.t, static_cast<long>(r.layers[j]));
        EXPECT_NEAR(row.tau, r.tau(j), 1e-12);
      } else {
        EXPECT_EQ(row.t, -1);
      }
    }
  }
}

TEST(Experiment, ReadCsvRejectsWrongSchema) {
  std::istringstream a("N,p\n1,2\n");
  EXPECT_THROW(read_csv(a), ConfigError);
  std::istringstream b(std::string(kCsvHeader) + "\n12,0.1,open\n");
  EXPECT_THROW(read_csv(b), ConfigError);
  std::istringstream c(std::string(kCsvHeader) + "\n12,x,open,config1,0.5,-1,-1,g3,1,0,0,10,1\n");
  EXPECT_THROW(read_csv(c), ConfigError);
}

TEST(Experiment, CurvesFromRows) {
  std::vector<CsvRow> rows;
  for (std::size_t n : {24u, 48u}) {
    for (double p : {0.2, 0.1, 0.0}) {
      CsvRow r;
      r.n = n;
      r.p = p;
      r.partition_param = "0.5";
      r.observable = "g3";
      r.mean = 1 - p;
      r.std_error = 0.0;
      r.n_traj = 50;
      rows.push_back(r);
      r.observable = "n_AB";
      rows.push_back(r);
      r.observable = "g3";
      r.t = 10;
      r.tau = 10.0 / n;
      rows.push_back(r);
    }
  }
  const auto steady = curves_from_rows(rows, "g3", ScalingAxis::p);
  ASSERT_EQ(steady.size(), 2u);
  EXPECT_DOUBLE_EQ(steady[0].size, 24);
  ASSERT_EQ(steady[0].points.size(), 3u);
  EXPECT_DOUBLE_EQ(steady[0].points[0].sigma, 1.0 / 50);
  const auto dyn = curves_from_rows(rows, "g3", ScalingAxis::tau);
  ASSERT_EQ(dyn.size(), 2u);
  EXPECT_DOUBLE_EQ(dyn[1].points[0].x, 10.0 / 48);
  const auto frac = curves_from_rows(rows, "g3", ScalingAxis::partition_param);
  EXPECT_DOUBLE_EQ(frac[0].points[0].x, 0.5);
  EXPECT_TRUE(curves_from_rows(rows, "g4", ScalingAxis::p).empty());
  EXPECT_THROW(parse_scaling_axis("q"), std::invalid_argument);
}

TEST(Experiment, FitJsonFields) {
  CollapseFit f;
  f.critical_value = 0.16;
  f.exponent = 1.3;
  f.critical_uncertainty = 0.01;
  const auto j = to_json(f);
  for (const char* k : {"critical_value", "exponent", "quality", "uncertainty", "window", "n_points"}) {
    EXPECT_TRUE(j.contains(k)) << k;
  }
  EXPECT_DOUBLE_EQ(j["uncertainty"]["critical_value"].get<double>(), 0.01);
}

}  // namespace
}  // namespace ghz
