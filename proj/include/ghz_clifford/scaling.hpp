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
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ghz_clifford/rng.hpp"

namespace ghz {

struct ScalingPoint {
  double x = 0;
  double y = 0;
  double sigma = 1;
  /// Optional per-trajectory values behind y, used by the bootstrap.
  std::vector<double> samples;
};

struct ScalingCurve {
  double size = 0;
  std::vector<ScalingPoint> points;
};

using ScalingCurveSet = std::vector<ScalingCurve>;

/// Insufficient or degenerate input for a collapse.
class ScalingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CollapseOptions {
  /// Hold the critical value fixed and fit the exponent only.
  std::optional<double> fix_critical;
  /// Half-width of the fit window around the seed; chosen automatically when empty.
  std::optional<double> window;
  std::size_t min_points = 5;
  std::size_t bootstrap_samples = 100;
  std::uint64_t bootstrap_seed = 1;
};

struct CollapseFit {
  double critical_value = 0;
  /// nu (or mu) in u = (x - x_c) N^{1/exponent}.
  double exponent = 1;
  double quality = 0;
  double critical_uncertainty = 0;
  double exponent_uncertainty = 0;
  double window = 0;
  std::size_t n_points = 0;
  /// Refitted parameters of every bootstrap resample.
  std::vector<double> bootstrap_critical;
  std::vector<double> bootstrap_exponent;
};

namespace detail {

inline double interpolate(const std::vector<ScalingPoint>& pts, double x) {
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    if (x >= pts[k].x && x <= pts[k + 1].x) {
      const double span = pts[k + 1].x - pts[k].x;
      const double f = span > 0 ? (x - pts[k].x) / span : 0.0;
      return pts[k].y + f * (pts[k + 1].y - pts[k].y);
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace detail

/// Checks sizes, sorting and sigma > 0; returns a copy sorted by x.
inline ScalingCurveSet normalized_curves(ScalingCurveSet curves) {
  for (auto& c : curves) {
    if (c.size <= 0) throw ScalingError("scaling curve with non-positive size");
    std::sort(c.points.begin(), c.points.end(), [](const auto& a, const auto& b) { return a.x < b.x; });
    for (const auto& p : c.points) {
      if (!(p.sigma > 0)) throw ScalingError("scaling point with non-positive sigma");
    }
  }
  return curves;
}

/// Mean-based crossing of pairs of curves, averaged over size pairs. For each
/// pair the sign change of the interpolated difference with the largest jump
/// is used. Empty when no pair crosses.
inline std::optional<double> crossing_estimate(const ScalingCurveSet& input) {
  const ScalingCurveSet curves = normalized_curves(input);
  double sum = 0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < curves.size(); ++i) {
    for (std::size_t j = i + 1; j < curves.size(); ++j) {
      const auto& a = curves[i].points;
      const auto& b = curves[j].points;
      if (a.size() < 2 || b.size() < 2) continue;
      const double lo = std::max(a.front().x, b.front().x);
      const double hi = std::min(a.back().x, b.back().x);
      std::vector<double> knots;
      for (const auto& p : a) if (p.x >= lo && p.x <= hi) knots.push_back(p.x);
      for (const auto& p : b) if (p.x >= lo && p.x <= hi) knots.push_back(p.x);
      std::sort(knots.begin(), knots.end());
      knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
      double best_jump = 0;
      std::optional<double> best;
      for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
        const double d0 = detail::interpolate(a, knots[k]) - detail::interpolate(b, knots[k]);
        const double d1 = detail::interpolate(a, knots[k + 1]) - detail::interpolate(b, knots[k + 1]);
        if ((d0 < 0 && d1 >= 0) || (d0 > 0 && d1 <= 0) || (d0 == 0 && d1 != 0 && k == 0)) {
          const double jump = std::abs(d1 - d0);
          if (jump > best_jump) {
            best_jump = jump;
            best = knots[k] + (knots[k + 1] - knots[k]) * d0 / (d0 - d1);
          }
        }
      }
      if (best) {
        sum += *best;
        ++count;
      }
    }
  }
  if (count == 0) return std::nullopt;
  return sum / static_cast<double>(count);
}

/// Collapse objective: every point is compared with the straight line fitted
/// (weighted by 1/sigma^2) through the bracketing points of all other sizes at
/// its rescaled abscissa u = (x - x_c) N^{inv_exponent}; squared residuals are
/// normalised by sigma^2 plus the line's own variance and averaged. When fewer
/// than half of the points have partners the value is a large penalty.
inline double collapse_quality(const ScalingCurveSet& curves, double critical, double inv_exponent) {
  std::vector<std::vector<double>> u(curves.size());
  std::size_t total = 0;
  for (std::size_t j = 0; j < curves.size(); ++j) {
    const double scale = std::pow(curves[j].size, inv_exponent);
    for (const auto& p : curves[j].points) u[j].push_back((p.x - critical) * scale);
    total += curves[j].points.size();
  }
  double sum = 0;
  std::size_t terms = 0;
  for (std::size_t j = 0; j < curves.size(); ++j) {
    for (std::size_t i = 0; i < curves[j].points.size(); ++i) {
      const double ui = u[j][i];
      double k0 = 0, kx = 0, kxx = 0, ky = 0, kxy = 0;
      std::size_t used = 0;
      for (std::size_t jj = 0; jj < curves.size(); ++jj) {
        if (jj == j) continue;
        const auto& uu = u[jj];
        for (std::size_t k = 0; k + 1 < uu.size(); ++k) {
          if (uu[k] <= ui && ui <= uu[k + 1]) {
            for (std::size_t m : {k, k + 1}) {
              const auto& q = curves[jj].points[m];
              const double w = 1.0 / (q.sigma * q.sigma);
              k0 += w;
              kx += w * uu[m];
              kxx += w * uu[m] * uu[m];
              ky += w * q.y;
              kxy += w * uu[m] * q.y;
            }
            used += 2;
            break;
          }
        }
      }
      if (used == 0) continue;
      const double det = k0 * kxx - kx * kx;
      if (!(std::abs(det) > 1e-300)) continue;
      const double yhat = (kxx * ky - kx * kxy + ui * (k0 * kxy - kx * ky)) / det;
      const double var_hat = std::max(0.0, (kxx - 2 * ui * kx + ui * ui * k0) / det);
      const auto& p = curves[j].points[i];
      sum += (p.y - yhat) * (p.y - yhat) / (p.sigma * p.sigma + var_hat);
      ++terms;
    }
  }
  if (terms == 0 || 2 * terms < total) return 1e6 + static_cast<double>(total - terms);
  return sum / static_cast<double>(terms);
}

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0;
  std::size_t evaluations = 0;
};

/// Derivative-free simplex minimisation; stops when every vertex lies within
/// `tol` of the best one in every coordinate (or after max_evals).
inline NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                    std::vector<double> start, std::vector<double> step, double tol = 1e-4,
                                    std::size_t max_evals = 4000) {
  const std::size_t d = start.size();
  std::vector<std::vector<double>> simplex(d + 1, start);
  for (std::size_t i = 0; i < d; ++i) simplex[i + 1][i] += step[i];
  std::vector<double> val(d + 1);
  std::size_t evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    return f(x);
  };
  for (std::size_t i = 0; i <= d; ++i) val[i] = eval(simplex[i]);

  std::vector<std::size_t> order(d + 1);
  while (evals < max_evals) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return val[a] < val[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[d - 1];
    double spread = 0;
    for (std::size_t i = 0; i <= d; ++i)
      for (std::size_t k = 0; k < d; ++k) spread = std::max(spread, std::abs(simplex[i][k] - simplex[best][k]));
    if (spread < tol) break;

    std::vector<double> centroid(d, 0.0);
    for (std::size_t i = 0; i <= d; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < d; ++k) centroid[k] += simplex[i][k] / static_cast<double>(d);
    }
    auto along = [&](double t) {
      std::vector<double> x(d);
      for (std::size_t k = 0; k < d; ++k) x[k] = centroid[k] + t * (simplex[worst][k] - centroid[k]);
      return x;
    };
    const auto xr = along(-1.0);
    const double fr = eval(xr);
    if (fr < val[best]) {
      const auto xe = along(-2.0);
      const double fe = eval(xe);
      if (fe < fr) {
        simplex[worst] = xe;
        val[worst] = fe;
      } else {
        simplex[worst] = xr;
        val[worst] = fr;
      }
    } else if (fr < val[second]) {
      simplex[worst] = xr;
      val[worst] = fr;
    } else {
      const bool outside = fr < val[worst];
      const auto xc = along(outside ? -0.5 : 0.5);
      const double fc = eval(xc);
      if (fc < (outside ? fr : val[worst])) {
        simplex[worst] = xc;
        val[worst] = fc;
      } else {
        for (std::size_t i = 0; i <= d; ++i) {
          if (i == best) continue;
          for (std::size_t k = 0; k < d; ++k) simplex[i][k] = simplex[best][k] + 0.5 * (simplex[i][k] - simplex[best][k]);
          val[i] = eval(simplex[i]);
        }
      }
    }
  }
  const std::size_t best = static_cast<std::size_t>(std::min_element(val.begin(), val.end()) - val.begin());
  return {simplex[best], val[best], evals};
}

namespace detail {

// Explicit window, else the widest symmetric window inside every curve,
// widened until each size keeps min_points.
inline double resolve_window(const ScalingCurveSet& curves, double seed, const CollapseOptions& opt) {
  auto keeps_enough = [&](double w) {
    for (const auto& c : curves) {
      std::size_t n = 0;
      for (const auto& p : c.points) n += std::abs(p.x - seed) <= w + 1e-12;
      if (n < opt.min_points) return false;
    }
    return true;
  };
  if (opt.window) {
    if (!keeps_enough(*opt.window)) {
      throw ScalingError("window " + std::to_string(*opt.window) + " keeps fewer than " +
                         std::to_string(opt.min_points) + " points for some size");
    }
    return *opt.window;
  }
  double inside = std::numeric_limits<double>::infinity();
  for (const auto& c : curves) {
    inside = std::min({inside, seed - c.points.front().x, c.points.back().x - seed});
  }
  if (inside > 0 && keeps_enough(inside)) return inside;
  std::vector<double> candidates;
  for (const auto& c : curves)
    for (const auto& p : c.points) candidates.push_back(std::abs(p.x - seed));
  std::sort(candidates.begin(), candidates.end());
  for (double w : candidates) {
    if (w >= inside && keeps_enough(w)) return w;
  }
  throw ScalingError("not enough points around the transition");
}

inline ScalingCurveSet restrict_window(const ScalingCurveSet& curves, double seed, double w) {
  ScalingCurveSet out = curves;
  for (auto& c : out) {
    std::erase_if(c.points, [&](const ScalingPoint& p) { return std::abs(p.x - seed) > w + 1e-12; });
  }
  return out;
}

struct Estimate {
  double critical;
  double inv_exponent;
  double quality;
};

inline double penalised(const ScalingCurveSet& c, double xc, double a) {
  if (!(a > 1e-3)) return 1e9 + (1e-3 - a);
  return collapse_quality(c, xc, a);
}

inline Estimate minimise(const ScalingCurveSet& curves, const std::optional<double>& fixed,
                         const std::vector<Estimate>& starts, double xc_step) {
  Estimate best{0, 0, std::numeric_limits<double>::infinity()};
  for (const auto& s : starts) {
    Estimate e;
    if (fixed) {
      const auto r = nelder_mead([&](const std::vector<double>& v) { return penalised(curves, *fixed, v[0]); },
                                 {s.inv_exponent}, {0.1});
      e = {*fixed, r.x[0], r.value};
    } else {
      const auto r = nelder_mead([&](const std::vector<double>& v) { return penalised(curves, v[0], v[1]); },
                                 {s.critical, s.inv_exponent}, {xc_step, 0.1});
      e = {r.x[0], r.x[1], r.value};
    }
    if (e.quality < best.quality) best = e;
  }
  return best;
}

}  // namespace detail

/// Grid of starting points for the collapse optimiser: 5 critical values
/// across the window times 5 inverse exponents (5 starts when the critical
/// value is fixed).
inline std::vector<std::array<double, 2>> collapse_start_grid(double seed, double window, bool fixed) {
  std::vector<std::array<double, 2>> grid;
  const std::array<double, 5> inv = {0.3, 0.6, 0.9, 1.2, 1.5};
  for (int i = 0; i < (fixed ? 1 : 5); ++i) {
    const double xc = fixed ? seed : seed + window * (static_cast<double>(i) - 2.0) / 4.0;
    for (double a : inv) grid.push_back({xc, a});
  }
  return grid;
}

/// Finite-size-scaling collapse y = F[(x - x_c) N^{1/exponent}]. The fit
/// window is centred on the fixed critical value, or else on the crossing
/// estimate (falling back to the middle of the data), and the optimiser runs
/// Nelder-Mead from every grid start. Uncertainties are the standard
/// deviations of refits on bootstrap resamples (per-trajectory samples when
/// present, otherwise Gaussian noise of width sigma).
inline CollapseFit collapse_fit(const ScalingCurveSet& input, const CollapseOptions& opt = {}) {
  const ScalingCurveSet all = normalized_curves(input);
  if (all.size() < 3) throw ScalingError("collapse needs at least 3 system sizes, got " + std::to_string(all.size()));
  double ymin = std::numeric_limits<double>::infinity(), ymax = -ymin, xmin = ymin, xmax = -ymin;
  for (const auto& c : all) {
    if (c.points.size() < opt.min_points) throw ScalingError("curve with fewer than " + std::to_string(opt.min_points) + " points");
    for (const auto& p : c.points) {
      ymin = std::min(ymin, p.y);
      ymax = std::max(ymax, p.y);
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
    }
  }
  if (ymax - ymin <= 1e-12 * std::max(1.0, std::abs(ymax))) throw ScalingError("no transition: all values are equal");

  double seed = 0.5 * (xmin + xmax);
  if (opt.fix_critical) {
    seed = *opt.fix_critical;
  } else if (const auto cross = crossing_estimate(all)) {
    seed = *cross;
  }
  const double w = detail::resolve_window(all, seed, opt);
  const ScalingCurveSet curves = detail::restrict_window(all, seed, w);
  const double xc_step = std::max(w / 10.0, 1e-6);

  std::vector<detail::Estimate> starts;
  for (const auto& g : collapse_start_grid(seed, w, opt.fix_critical.has_value())) starts.push_back({g[0], g[1], 0});
  const detail::Estimate best = detail::minimise(curves, opt.fix_critical, starts, xc_step);

  CollapseFit fit;
  fit.critical_value = best.critical;
  fit.exponent = 1.0 / best.inv_exponent;
  fit.quality = best.quality;
  fit.window = w;
  for (const auto& c : curves) fit.n_points += c.points.size();

  if (opt.bootstrap_samples > 1) {
    Rng rng(opt.bootstrap_seed);
    std::vector<double>& xcs = fit.bootstrap_critical;
    std::vector<double>& exps = fit.bootstrap_exponent;
    for (std::size_t b = 0; b < opt.bootstrap_samples; ++b) {
      ScalingCurveSet re = curves;
      for (auto& c : re) {
        for (auto& p : c.points) {
          if (p.samples.size() > 1) {
            const std::size_t m = p.samples.size();
            double s = 0, s2 = 0;
            for (std::size_t k = 0; k < m; ++k) {
              const double v = p.samples[rng.below(m)];
              s += v;
              s2 += v * v;
            }
            const double mean = s / static_cast<double>(m);
            const double var = std::max(0.0, (s2 - s * mean) / static_cast<double>(m - 1));
            p.y = mean;
            p.sigma = std::max(std::sqrt(var / static_cast<double>(m)), p.sigma * 1e-3);
          } else {
            p.y += p.sigma * rng.normal();
          }
        }
      }
      const detail::Estimate e = detail::minimise(re, opt.fix_critical, {best}, xc_step);
      xcs.push_back(e.critical);
      exps.push_back(1.0 / e.inv_exponent);
    }
    auto sd = [](const std::vector<double>& v) {
      const double m = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
      double s = 0;
      for (double x : v) s += (x - m) * (x - m);
      return std::sqrt(s / static_cast<double>(v.size() - 1));
    };
    fit.critical_uncertainty = opt.fix_critical ? 0.0 : sd(xcs);
    fit.exponent_uncertainty = sd(exps);
  }
  return fit;
}

}  // namespace ghz
