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


// Acceptance runner: `acceptance [criterion...]` runs the listed criteria (all
// when none are given) and prints one PASS/FAIL line each. Exit status is the
// number of failures.

#include <algorithm>
#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

#include "ghz_clifford/circuit.hpp"
#include "ghz_clifford/dense.hpp"
#include "ghz_clifford/ensemble.hpp"
#include "ghz_clifford/entanglement.hpp"
#include "ghz_clifford/oracle_check.hpp"
#include "ghz_clifford/partition.hpp"
#include "ghz_clifford/scaling.hpp"
#include "test_util.hpp"

namespace {

using namespace ghz;

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    pass = pass && ok;
    append((ok ? "" : "[x] ") + what);
  }
  void note(const std::string& what) { append(what); }

 private:
  void append(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

std::size_t workers() {
  if (const char* env = std::getenv("GHZ_CLIFFORD_WORKERS")) return std::max(1l, std::atol(env));
  return std::max(1u, std::thread::hardware_concurrency());
}

EnsembleResult ensemble(std::size_t n, double p, std::vector<Partition> parts, std::size_t n_traj, std::uint64_t seed,
                        RecordMode mode = RecordMode::steady_state, unsigned mask = kGhzIndex, std::size_t depth = 0,
                        Boundary b = Boundary::open, std::size_t stride = 1) {
  EnsembleSpec s;
  s.circuit.n_qubits = n;
  s.circuit.meas_prob = p;
  s.circuit.boundary = b;
  s.circuit.depth_layers = depth;
  s.circuit.seed = seed;
  s.circuit.record_stride = stride;
  s.partitions = std::move(parts);
  s.n_trajectories = n_traj;
  s.observables = mask;
  s.mode = mode;
  return run_ensemble(s, workers());
}

ScalingPoint point(double x, const SeriesStatistics& s, std::size_t n_traj) {
  return {x, s.mean[0], std::max(s.std_error[0], 1.0 / static_cast<double>(n_traj)), s.trajectory_means};
}

// 1. Tableau observables agree exactly with the statevector oracle.
Verdict criterion1() {
  Verdict v;
  const OracleReport r = oracle_check(8, 200, 2024, {0.0, 0.1, 0.3});
  v.require(r.ok(), fmt("%zu states, %zu comparisons, %zu mismatches", r.states, r.comparisons, r.mismatches.size()));
  for (std::size_t i = 0; i < std::min<std::size_t>(3, r.mismatches.size()); ++i) {
    const auto& m = r.mismatches[i];
    v.note(fmt("trajectory %zu layer %zu %s: %g vs %g", m.trajectory, m.layer, m.observable.c_str(), m.tableau, m.dense));
  }
  return v;
}

// 2. Volume-law plateau of g3 for config1 at N_B/N = 1/3.
Verdict criterion2() {
  Verdict v;
  std::vector<double> g;
  for (std::size_t n : {24u, 48u}) {
    const auto r = ensemble(n, 0.05, {Partition::config1(n, n / 3)}, 1000, 200 + n);
    const auto& s = r.find("g3");
    g.push_back(s.mean[0]);
    v.require(std::abs(s.mean[0] - 1.25) <= 0.15, fmt("N=%zu <g3>=%.4f+-%.4f", n, s.mean[0], s.std_error[0]));
  }
  v.require(std::abs(g[0] - g[1]) < 0.15, fmt("|delta|=%.4f", std::abs(g[0] - g[1])));
  return v;
}

// 3. Measurement-induced transition from a p sweep and collapse.
Verdict criterion3() {
  Verdict v;
  ScalingCurveSet curves;
  for (std::size_t n : {24u, 48u, 96u}) {
    ScalingCurve c{static_cast<double>(n), {}};
    for (int k = 0; k <= 8; ++k) {
      const double p = 0.08 + 0.02 * k;
      const auto r = ensemble(n, p, {Partition::config1(n, n / 3)}, 1000, 300 + 16 * n + k);
      c.points.push_back(point(p, r.find("g3"), 1000));
    }
    curves.push_back(std::move(c));
  }
  const CollapseFit fit = collapse_fit(curves);
  v.require(fit.critical_value >= 0.14 && fit.critical_value <= 0.18,
            fmt("p_c=%.4f+-%.4f", fit.critical_value, fit.critical_uncertainty));
  const double inv = 1.0 / fit.exponent;
  v.require(inv >= 0.5 && inv <= 1.1, fmt("1/nu=%.3f (nu=%.3f+-%.3f)", inv, fit.exponent, fit.exponent_uncertainty));
  v.note(fmt("quality=%.3f window=%.3f points=%zu", fit.quality, fit.window, fit.n_points));
  return v;
}

// config1 partitions at N_B = N/2 + d for even |d| <= 8, plus N_B/N = 1/3 and
// 2/3. A fixed offset grid samples the crossover at every size.
std::vector<Partition> pipt_family(std::size_t n) {
  std::vector<std::size_t> nb = {n / 3, 2 * n / 3};
  for (int d = -8; d <= 8; d += 2) nb.push_back(static_cast<std::size_t>(static_cast<int>(n / 2) + d));
  std::sort(nb.begin(), nb.end());
  nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  std::vector<Partition> parts;
  for (std::size_t b : nb) parts.push_back(Partition::config1(n, b));
  return parts;
}

// 4. Partitioning-induced transition at p = 0.
Verdict criterion4() {
  Verdict v;
  ScalingCurveSet curves;
  const std::size_t traj = 500;
  for (std::size_t n : {24u, 48u, 96u}) {
    const auto parts = pipt_family(n);
    const auto r = ensemble(n, 0.0, parts, traj, 400 + n);
    ScalingCurve c{static_cast<double>(n), {}};
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const auto& s = r.find("g3", i);
      c.points.push_back(point(parts[i].parameter(), s, traj));
      if (std::abs(parts[i].parameter() - 1.0 / 3) < 1e-9) v.require(s.mean[0] > 1.0, fmt("N=%zu <g3>(1/3)=%.4f", n, s.mean[0]));
      if (std::abs(parts[i].parameter() - 2.0 / 3) < 1e-9 && n == 96) {
        v.require(s.mean[0] < 0.1, fmt("N=96 <g3>(2/3)=%.4f", s.mean[0]));
      }
    }
    curves.push_back(std::move(c));
  }
  CollapseOptions opt;
  opt.fix_critical = 0.5;
  const CollapseFit fit = collapse_fit(curves, opt);
  v.require(fit.exponent >= 0.7 && fit.exponent <= 1.3,
            fmt("mu=%.3f+-%.3f quality=%.3f", fit.exponent, fit.exponent_uncertainty, fit.quality));
  return v;
}

// 5. Config2 keeps g3 at small p and loses it at p = 0.
Verdict criterion5() {
  Verdict v;
  const std::size_t n = 96;
  const Partition part = Partition::config2(n, 64);
  const auto a = ensemble(n, 0.02, {part}, 300, 501).find("g3");
  const auto b = ensemble(n, 0.0, {part}, 300, 502).find("g3");
  v.require(a.mean[0] > 0.3, fmt("p=0.02 <g3>=%.4f+-%.4f", a.mean[0], a.std_error[0]));
  v.require(b.mean[0] < 0.1, fmt("p=0 <g3>=%.4f+-%.4f", b.mean[0], b.std_error[0]));
  return v;
}

// 6. Transient g3 in config2 with birth and death times.
Verdict criterion6() {
  Verdict v;
  std::vector<BirthDeath> bd;
  for (std::size_t n : {24u, 48u, 96u}) {
    const Partition part = Partition::for_config(PartitionConfig::config2, n, 0.6);
    const auto r = ensemble(n, 0.0, {part}, 200, 600 + n, RecordMode::dynamics, kGhzIndex, 2 * n, Boundary::open,
                            std::max<std::size_t>(1, n / 24));
    const auto& m = r.find("g3").mean;
    const double thr = adaptive_threshold(r);
    const auto t = birth_death_times(r, thr);
    const std::size_t peak = std::max_element(m.begin(), m.end()) - m.begin();
    const double after = *std::min_element(m.begin() + peak, m.end());
    v.require(t.birth && t.death && after < 0.1,
              fmt("N=%zu peak=%.3f threshold=%.3f birth=%.3f death=%.3f min_after_peak=%.4f", n, m[peak], thr,
                  t.birth.value_or(NAN), t.death.value_or(NAN), after));
    bd.push_back(t);
  }
  if (bd[1].birth && bd[2].birth && bd[1].death && bd[2].death) {
    const double db = std::abs(*bd[1].birth - *bd[2].birth), dd = std::abs(*bd[1].death - *bd[2].death);
    v.require(db < 0.15 && dd < 0.15, fmt("spread(48,96) birth=%.3f death=%.3f", db, dd));
  } else {
    v.require(false, "missing birth or death time");
  }
  return v;
}

// 7. Birth time is linear in N_B/N and shifts earlier with measurements.
Verdict criterion7() {
  Verdict v;
  const std::size_t n = 96;
  const std::vector<std::size_t> sizes = {16, 24, 32, 40};
  std::vector<Partition> parts;
  for (std::size_t nb : sizes) parts.push_back(Partition::config1(n, nb));
  std::map<double, std::vector<double>> births;
  for (double p : {0.0, 0.05}) {
    const auto r = ensemble(n, p, parts, 300, 700 + static_cast<std::uint64_t>(p * 100), RecordMode::dynamics, kGhzIndex,
                            n, Boundary::open, 1);
    std::string line = fmt("p=%.2f tau_birth:", p);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const auto t = birth_death_times(r, adaptive_threshold(r, "g3", i), "g3", i);
      births[p].push_back(t.birth.value_or(NAN));
      line += fmt(" %.4f", births[p].back());
    }
    v.note(line);
  }
  std::vector<double> x, y;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    x.push_back(static_cast<double>(sizes[i]) / n);
    y.push_back(births[0.0][i]);
  }
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / x.size();
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / y.size();
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  const double r2 = syy > 0 ? sxy * sxy / (sxx * syy) : 0.0;
  v.require(std::isfinite(r2) && r2 > 0.9, fmt("R^2=%.4f slope=%.3f", r2, sxy / sxx));
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    v.require(births[0.05][i] < births[0.0][i],
              fmt("N_B/N=%.4f: %.4f -> %.4f", x[i], births[0.0][i], births[0.05][i]));
  }
  return v;
}

// 8. g4 peaks at the measurement-induced critical point.
Verdict criterion8() {
  Verdict v;
  const std::size_t n = 96;
  const Partition part = Partition::from_ratios(n, {1, 2, 2, 1});
  std::vector<double> g;
  for (double p : {0.08, 0.16, 0.24}) {
    const auto s = ensemble(n, p, {part}, 2000, 800 + static_cast<std::uint64_t>(p * 100)).find("g4");
    g.push_back(s.mean[0]);
    v.note(fmt("p=%.2f <g4>=%.4f+-%.4f", p, s.mean[0], s.std_error[0]));
  }
  v.require(g[1] > 3 * g[0] && g[1] > 3 * g[2], fmt("ratios %.2f, %.2f", g[1] / g[0], g[1] / g[2]));
  return v;
}

// 9. I_AC = g3 + 2 n_AC with B and D merged, and n_AC is small.
Verdict criterion9() {
  Verdict v;
  const std::size_t n = 48;
  const Partition part = Partition::from_ratios(n, {1, 3, 1, 3}).merged(1, 3);
  const unsigned mask = kGhzIndex | kBellCounts | kMutualInformation;
  const auto r = ensemble(n, 0.16, {part}, 500, 901, RecordMode::steady_state, mask, 0, Boundary::periodic);
  const double i_ac = r.find("I_AC").mean[0], g3 = r.find("g3").mean[0], n_ac = r.find("n_AC").mean[0];
  v.require(std::abs(i_ac - g3) < 0.1, fmt("<I_AC>=%.4f <g3>=%.4f", i_ac, g3));
  v.require(n_ac < 0.05, fmt("<n_AC>=%.4f", n_ac));

  CircuitConfig cfg;
  cfg.n_qubits = n;
  cfg.meas_prob = 0.16;
  cfg.boundary = Boundary::periodic;
  std::size_t states = 0, violations = 0;
  for (std::size_t k = 0; k < 200; ++k) {
    Rng rng = Rng::child(902, k);
    const auto tr = run_trajectory(cfg, {part}, rng, mask);
    const ObservableSeries *g = nullptr, *nac = nullptr, *mi = nullptr;
    for (const auto& s : tr.series) {
      if (s.name == "g3") g = &s;
      if (s.name == "n_AC") nac = &s;
      if (s.name == "I_AC") mi = &s;
    }
    for (std::size_t j = 0; j < tr.layers.size(); ++j) {
      ++states;
      violations += mi->values[j] != g->values[j] + 2 * nac->values[j];
    }
  }
  v.require(violations == 0, fmt("identity checked on %zu states, %zu violations", states, violations));
  return v;
}

// 10. Deep unitary circuits at N = 12 against the typicality bound.
Verdict criterion10() {
  Verdict v;
  const std::size_t n = 12;
  const auto r = ensemble(n, 0.0, {Partition::config1(n, 4), Partition::config2(n, 8)}, 40000, 1001,
                          RecordMode::steady_state, kGhzIndex, 4 * n);
  const auto& bal = r.find("g3", 0);
  const auto& ext = r.find("g3", 1);
  const double log2_3 = std::log2(3.0);
  v.require(bal.mean[0] <= log2_3 && bal.mean[0] >= 1.0,
            fmt("4/4/4 <g3>=%.4f+-%.4f (bound %.4f)", bal.mean[0], bal.std_error[0], dense::typicality_bound(n, 4, 4, 4)));
  v.require(ext.mean[0] < 0.05,
            fmt("8/2/2 <g3>=%.4f+-%.4f (bound %.4f)", ext.mean[0], ext.std_error[0], dense::typicality_bound(n, 8, 2, 2)));
  return v;
}

// 11. Property suites.
Verdict criterion11() {
  Verdict v;
  Rng rng(1100);
  std::size_t checked = 0, bad = 0;

  {
    CircuitConfig cfg;
    cfg.verify_invariants = true;
    for (std::size_t n : {5u, 24u, 64u, 65u}) {
      for (double p : {0.0, 0.1, 0.3}) {
        cfg.n_qubits = n;
        cfg.meas_prob = p;
        try {
          run_trajectory(cfg, {Partition::contiguous({n / 3, n / 3, n - 2 * (n / 3)})}, rng, kGhzIndex);
          ++checked;
        } catch (const std::logic_error&) {
          ++bad;
        }
      }
    }
    v.require(bad == 0, fmt("per-layer tableau invariants on %zu runs", checked));
  }

  std::size_t bipartite = 0, bookkeeping = 0, monotone = 0, phase = 0, local = 0, states = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 6 + rng.below(40);
    auto t = testing::random_state(n, rng, 0, 0.2 * rng.uniform());
    const std::size_t a = 1 + rng.below(n - 3), b = 1 + rng.below(n - a - 2);
    const Partition p3 = Partition::contiguous({a, b, n - a - b});
    const Partition p2 = Partition::contiguous({a, n - a});
    ++states;
    bipartite += ghz_index(t, p2) != entanglement_entropy(t, p2.party(0));
    const GhzDecomposition d = bell_counts(t, p3);
    bookkeeping += entanglement_entropy(t, p3.party(0)) != d.g + d.n_ab + d.n_ac;
    const std::size_t c = 1 + rng.below(n - a - b - 1);
    const Partition p4 = Partition::contiguous({a, b, c, n - a - b - c});
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j) monotone += ghz_index(t, p4.merged(i, j)) < ghz_index(t, p4);
    auto cleared = t;
    cleared.clear_phases();
    phase += !(bell_counts(cleared, p3) == d) || ghz_index(cleared, p4) != ghz_index(t, p4);
    for (int g = 0; g < 40; ++g) {
      const auto& qs = p3.party(rng.below(3));
      if (qs.size() < 2) continue;
      const std::size_t i = rng.below(qs.size());
      std::size_t j = rng.below(qs.size() - 1);
      if (j >= i) ++j;
      t.apply(sample_uniform(rng), qs[i], qs[j]);
    }
    local += !(bell_counts(t, p3) == d);
  }
  v.require(bipartite == 0, "g2 = S_A");
  v.require(bookkeeping == 0, "S_A = g3 + n_AB + n_AC");
  v.require(monotone == 0, "coarse-graining monotonicity");
  v.require(phase == 0, "phase blindness");
  v.require(local == 0, fmt("local-unitary invariance (%zu states)", states));

  {
    ScalingCurveSet curves;
    for (double n : {24.0, 48.0, 96.0}) {
      ScalingCurve c{n, {}};
      for (int i = 0; i <= 16; ++i) {
        const double x = 0.08 + 0.01 * i;
        const double y = 1.0 / (1.0 + std::exp((x - 0.16) * std::pow(n, 0.75))) + 0.1;
        c.points.push_back({x, y + 0.01 * rng.normal(), 0.01, {}});
      }
      curves.push_back(c);
    }
    const CollapseFit fit = collapse_fit(curves);
    v.require(std::abs(fit.critical_value - 0.16) < 0.005 && std::abs(1.0 / fit.exponent - 0.75) < 0.1,
              fmt("collapse round trip x_c=%.4f 1/nu=%.3f (planted 0.16, 0.75)", fit.critical_value, 1.0 / fit.exponent));
  }

  {
    EnsembleSpec s;
    s.circuit.n_qubits = 24;
    s.circuit.meas_prob = 0.1;
    s.circuit.seed = 1101;
    s.partitions = {Partition::config1(24, 8)};
    s.n_trajectories = 40;
    s.observables = kAllObservables;
    bool same = true;
    for (RecordMode m : {RecordMode::steady_state, RecordMode::dynamics}) {
      s.mode = m;
      const auto ref = run_ensemble(s, 1);
      for (std::size_t w : {2u, 7u, 64u}) same = same && run_ensemble(s, w) == ref;
    }
    v.require(same, "determinism across worker counts 1, 2, 7, 64");
  }
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Verdict()>> criteria = {criterion1, criterion2, criterion3, criterion4,
                                                          criterion5, criterion6, criterion7, criterion8,
                                                          criterion9, criterion10, criterion11};
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
  if (which.empty()) {
    which.resize(criteria.size());
    std::iota(which.begin(), which.end(), 1);
  }
  int failures = 0;
  for (int c : which) {
    if (c < 1 || c > static_cast<int>(criteria.size())) {
      std::fprintf(stderr, "unknown criterion %d\n", c);
      return 64;
    }
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[c - 1]();
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %d: %s (%.1f s)\n", v.pass ? "PASS" : "FAIL", c, v.detail.c_str(), secs);
    std::fflush(stdout);
    failures += !v.pass;
  }
  return failures;
}
