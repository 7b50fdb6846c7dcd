#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "zetamoment/errors.hpp"

// The regularization pipeline: unit elements h(t_j) -> partial sums
// H(t_m) -> running (C,1) means, plus growth classification, asymptote
// crossings, closest approach and period estimation.

namespace zetamoment {

struct CesaroTrace {
  std::vector<double> elements;   // h(t_j)
  std::vector<double> partial;    // H(t_m) = sum_{j<=m} h(t_j)
  std::vector<double> means;      // running mean of the P_k sequence
  std::vector<double> t_grid;     // abscissa of partial[i] (right panel edge)
  int sum_order = 1;

  std::size_t size() const { return elements.size(); }
};

// sum_order is the number of cumulative-summation passes applied before
// the single running mean.  Order 1 is the (C,1) mean of the partial
// integrals P_k = H(t_k); order 2 feeds the mean with the iterated sum
// P_k = sum_{m<=k} H(t_m) instead.
inline CesaroTrace accumulate(std::span<const double> elements, double t0 = 0.0,
                              double dt = 1.0, int sum_order = 1) {
  if (elements.empty()) throw DomainError("accumulate: empty element sequence");
  if (sum_order < 1) throw DomainError("accumulate: sum_order must be >= 1");
  CesaroTrace trace;
  trace.sum_order = sum_order;
  const std::size_t n = elements.size();
  trace.elements.assign(elements.begin(), elements.end());
  trace.partial.resize(n);
  trace.t_grid.resize(n);
  double run = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    run += trace.elements[i];
    trace.partial[i] = run;
    trace.t_grid[i] = t0 + dt * static_cast<double>(i + 1);
  }
  std::vector<double> p = trace.partial;
  for (int pass = 2; pass <= sum_order; ++pass) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      acc += p[i];
      p[i] = acc;
    }
  }
  trace.means.resize(n);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += p[i];
    trace.means[i] = acc / static_cast<double>(i + 1);
  }
  return trace;
}

enum class GrowthVerdict { converged, linear_divergence, inconclusive };

struct GrowthClassification {
  GrowthVerdict verdict = GrowthVerdict::inconclusive;
  double value = 0.0;   // fitted level at the end of the window (converged)
  double slope = 0.0;   // fitted slope per unit t
  std::pair<std::size_t, std::size_t> fit_window{0, 0};
  double fit_residual = 0.0;  // residual RMS / window length (slope scale)
};

// Least-squares line through the means over the last half of the trace.
// linear_divergence needs |slope| > max(10 * fit_residual, 1e-3);
// converged needs |slope| < 1e-4 and a last-decile oscillation below
// max(1% of the level, 0.05).
inline GrowthClassification classify_growth(const CesaroTrace& trace) {
  const std::size_t n = trace.size();
  if (n < 200) throw DomainError("classify_growth: trace length must be >= 200");
  const std::size_t lo = n / 2;
  const double m = static_cast<double>(n - lo);
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = lo; i < n; ++i) {
    const double x = trace.t_grid[i];
    const double y = trace.means[i];
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double det = m * sxx - sx * sx;
  const double slope = (m * sxy - sx * sy) / det;
  const double intercept = (sy * sxx - sx * sxy) / det;
  double ss = 0.0;
  for (std::size_t i = lo; i < n; ++i) {
    const double resid = trace.means[i] - (intercept + slope * trace.t_grid[i]);
    ss += resid * resid;
  }
  const double window_len = trace.t_grid[n - 1] - trace.t_grid[lo];
  GrowthClassification out;
  out.slope = slope;
  out.value = intercept + slope * trace.t_grid[n - 1];
  out.fit_window = {lo, n};
  out.fit_residual = std::sqrt(ss / m) / std::max(1.0, window_len);

  const std::size_t dlo = n - n / 10;
  double dmin = trace.means[dlo], dmax = trace.means[dlo];
  for (std::size_t i = dlo; i < n; ++i) {
    dmin = std::min(dmin, trace.means[i]);
    dmax = std::max(dmax, trace.means[i]);
  }
  const double oscillation = 0.5 * (dmax - dmin);

  if (std::abs(slope) > std::max(10.0 * out.fit_residual, 1e-3)) {
    out.verdict = GrowthVerdict::linear_divergence;
  } else if (std::abs(slope) < 1e-4 &&
             oscillation < std::max(0.01 * std::abs(out.value), 0.05)) {
    out.verdict = GrowthVerdict::converged;
  }
  return out;
}

struct Crossing {
  double t;
  int direction;  // +1 upward, -1 downward
};

inline std::vector<Crossing> crossings_directed(const CesaroTrace& trace,
                                                double asymptote) {
  if (trace.size() == 0) throw DomainError("crossings: empty trace");
  std::vector<Crossing> out;
  for (std::size_t i = 1; i < trace.size(); ++i) {
    const double a = trace.partial[i - 1] - asymptote;
    const double b = trace.partial[i] - asymptote;
    if (a == 0.0) continue;
    if ((a < 0.0 && b >= 0.0) || (a > 0.0 && b <= 0.0)) {
      const double frac = a / (a - b);
      out.push_back({trace.t_grid[i - 1] + frac * (trace.t_grid[i] - trace.t_grid[i - 1]),
                     a < 0.0 ? +1 : -1});
    }
  }
  return out;
}

// Linearly interpolated crossing abscissae of the partial sums.
inline std::vector<double> crossings(const CesaroTrace& trace, double asymptote) {
  std::vector<double> out;
  for (const auto& c : crossings_directed(trace, asymptote)) out.push_back(c.t);
  return out;
}

struct ApproachMinimum {
  double t;
  double distance;  // signed: positive means the estimate sits above the line
};

// Local minima of |means - asymptote| with 3-point parabolic refinement.
inline std::vector<ApproachMinimum> closest_approach(const CesaroTrace& trace,
                                                     double asymptote) {
  const std::size_t n = trace.size();
  if (n < 3) throw DomainError("closest_approach: trace length must be >= 3");
  std::vector<ApproachMinimum> out;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double d0 = std::abs(trace.means[i - 1] - asymptote);
    const double d1 = std::abs(trace.means[i] - asymptote);
    const double d2 = std::abs(trace.means[i + 1] - asymptote);
    const bool is_min = (d1 < d0 && d1 <= d2) || (d1 <= d0 && d1 < d2);
    const bool plateau = (d0 == d1 && d1 == d2);
    if (!is_min && !plateau) continue;
    const double denom = d0 - 2.0 * d1 + d2;
    double shift = 0.0;
    double dist_abs = d1;
    if (denom > 0.0) {
      shift = 0.5 * (d0 - d2) / denom;
      dist_abs = d1 - 0.25 * (d0 - d2) * shift;
    }
    const double dt = trace.t_grid[1] - trace.t_grid[0];
    const double sign = (trace.means[i] - asymptote) >= 0.0 ? 1.0 : -1.0;
    out.push_back({trace.t_grid[i] + shift * dt, sign * dist_abs});
  }
  return out;
}

// The principal (one per beat) approach minima: local minima within
// max_distance of the asymptote, with any cluster closer than
// min_separation collapsed to its deepest member.  Secondary mid-beat
// dips sit far above the line and twin dips straddle the beat bottom a
// few units apart; both would pollute spacing and monotonicity reads.
inline std::vector<ApproachMinimum> principal_minima(const CesaroTrace& trace,
                                                     double asymptote,
                                                     double min_separation,
                                                     double max_distance) {
  std::vector<ApproachMinimum> kept;
  for (const auto& m : closest_approach(trace, asymptote)) {
    if (std::abs(m.distance) > max_distance) continue;
    if (!kept.empty() && m.t - kept.back().t < min_separation) {
      if (std::abs(m.distance) < std::abs(kept.back().distance)) kept.back() = m;
      continue;
    }
    kept.push_back(m);
  }
  return kept;
}

struct PeriodEstimate {
  double period;       // mean spacing of same-direction crossings
  double phase_drift;  // linear trend of the crossing-spacing residuals
};

inline PeriodEstimate period_estimate(const CesaroTrace& trace, double asymptote) {
  const auto all = crossings_directed(trace, asymptote);
  if (all.size() < 4)
    throw InsufficientCrossings("period_estimate: fewer than 4 asymptote crossings");
  std::vector<double> down, up;
  for (const auto& c : all) (c.direction < 0 ? down : up).push_back(c.t);
  const std::vector<double>& pts = down.size() >= up.size() ? down : up;
  if (pts.size() < 2)
    throw InsufficientCrossings("period_estimate: no repeated same-direction crossing");
  std::vector<double> spacing;
  for (std::size_t i = 1; i < pts.size(); ++i) spacing.push_back(pts[i] - pts[i - 1]);
  double mean = 0.0;
  for (double s : spacing) mean += s;
  mean /= static_cast<double>(spacing.size());
  double drift = 0.0;
  if (spacing.size() >= 2) {
    const double m = static_cast<double>(spacing.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < spacing.size(); ++i) {
      const double x = static_cast<double>(i);
      const double y = spacing[i] - mean;
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    drift = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  }
  return {mean, drift};
}

}  // namespace zetamoment
