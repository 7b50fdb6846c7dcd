#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <queue>
#include <vector>

#include "zetamoment/errors.hpp"

// Adaptive Gauss-Kronrod (G7,K15) panel integrator.  The error estimate
// per subinterval is the conservative |K15 - G7|; subintervals are
// bisected worst-first until the summed estimate meets the tolerance.

namespace zetamoment {

namespace detail {

// QUADPACK dqk15 nodes and weights (positive half; node 7 is the center).
inline constexpr double kGk15Nodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kGk15WeightsK[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kGk15WeightsG[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct GkEstimate {
  double value;
  double error;
};

template <typename F>
GkEstimate gk15(F&& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double halfw = 0.5 * (b - a);
  const double fc = f(center);
  double gauss = kGk15WeightsG[3] * fc;
  double kron = kGk15WeightsK[7] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = halfw * kGk15Nodes[i];
    const double fsum = f(center - dx) + f(center + dx);
    kron += kGk15WeightsK[i] * fsum;
    if (i % 2 == 1) gauss += kGk15WeightsG[i / 2] * fsum;
  }
  gauss *= halfw;
  kron *= halfw;
  if (!std::isfinite(kron))
    throw DomainError("integrate_panel: integrand produced a non-finite value");
  return {kron, std::abs(kron - gauss)};
}

}  // namespace detail

struct QuadratureResult {
  double value;
  double error;
  std::size_t evaluations;
};

struct QuadratureOptions {
  int min_intervals = 1;            // initial uniform split (node-floor support)
  std::size_t max_evaluations = 400000;
  double min_width_fraction = 1e-13;  // stop bisecting below this * (b - a)
};

template <typename F>
QuadratureResult integrate_panel_adaptive(F&& f, double a, double b, double tol,
                                          const QuadratureOptions& opts = {}) {
  if (!(b > a)) throw DomainError("integrate_panel: requires b > a");
  if (!(tol > 0.0)) throw DomainError("integrate_panel: requires tol > 0");

  struct Segment {
    double a, b, value, error;
  };
  auto worse = [](const Segment& x, const Segment& y) {
    if (x.error != y.error) return x.error < y.error;
    return x.a < y.a;  // deterministic tie-break
  };
  std::priority_queue<Segment, std::vector<Segment>, decltype(worse)> heap(worse);

  std::size_t evals = 0;
  double total_error = 0.0;
  double total_abs = 0.0;
  const int init = std::max(1, opts.min_intervals);
  for (int i = 0; i < init; ++i) {
    const double x0 = a + (b - a) * i / init;
    const double x1 = (i + 1 == init) ? b : a + (b - a) * (i + 1) / init;
    const auto est = detail::gk15(f, x0, x1);
    evals += 15;
    heap.push({x0, x1, est.value, est.error});
    total_error += est.error;
    total_abs += std::abs(est.value);
  }

  const double min_width = opts.min_width_fraction * (b - a);
  while (total_error > std::max(tol, 1e-15 * total_abs)) {
    const Segment worst = heap.top();
    if (worst.b - worst.a <= min_width) break;
    if (evals + 30 > opts.max_evaluations)
      throw NonConvergence("integrate_panel: evaluation budget exhausted before reaching tolerance");
    heap.pop();
    total_error -= worst.error;
    total_abs -= std::abs(worst.value);
    const double mid = 0.5 * (worst.a + worst.b);
    const auto left = detail::gk15(f, worst.a, mid);
    const auto right = detail::gk15(f, mid, worst.b);
    evals += 30;
    heap.push({worst.a, mid, left.value, left.error});
    heap.push({mid, worst.b, right.value, right.error});
    total_error += left.error + right.error;
    total_abs += std::abs(left.value) + std::abs(right.value);
  }

  // Ascending-interval summation keeps the result independent of the
  // heap's pop history.
  std::vector<Segment> segments;
  segments.reserve(heap.size());
  while (!heap.empty()) {
    segments.push_back(heap.top());
    heap.pop();
  }
  std::sort(segments.begin(), segments.end(),
            [](const Segment& x, const Segment& y) { return x.a < y.a; });
  double value = 0.0, error = 0.0, abs_scale = 0.0;
  for (const auto& seg : segments) {
    value += seg.value;
    error += seg.error;
    abs_scale += std::abs(seg.value);
  }
  if (error > std::max(tol, 1e-14 * abs_scale))
    throw NonConvergence("integrate_panel: could not reach tolerance (estimate " +
                         std::to_string(error) + ")");
  return {value, error, evals};
}

inline std::pair<double, double> integrate_panel(const std::function<double(double)>& f,
                                                 double a, double b, double tol,
                                                 const QuadratureOptions& opts = {}) {
  const auto r = integrate_panel_adaptive(f, a, b, tol, opts);
  return {r.value, r.error};
}

}  // namespace zetamoment
