#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <thread>
#include <vector>

#include "zetamoment/quadrature.hpp"
#include "zetamoment/zeta.hpp"

// The integrand families of the moment-integral experiments, and their
// subdivision into delta = 1 unit elements h(t_j) for the Cesaro pipeline.

namespace zetamoment {

enum class Kernel {
  moment_over_s,        // zeta(s) r^s / s
  plain_moment,         // zeta^(m)(s) r^s, m >= 0
  inverse_square,       // zeta(s) r^s / s^2
  derivative_over_s,    // zeta'(s) r^s / s
  deriv_over_s_minus_inverse_square,  // (zeta'(s)/s - zeta(s)/s^2) r^s
  master_f,             // zeta(1/2+it) r^{1/2+it}/(1/2+it) - zeta(3/2-it) r^{3/2-it}/(3/2-it)
  sin_kernel,           // t sin(at) / (sigma^2 + t^2), a = ln r
  cos_kernel            // cos(at) / (sigma^2 + t^2),   a = ln r
};

enum class Component { real, imag };

// full means the two-sided integral over (-T, T); by conjugate symmetry
// its value is twice the half-line real part, and that is how the real
// component is evaluated.  The imaginary component of a full-form spec
// is computed from honestly paired mirror panels instead.
enum class LineForm { half, full };

struct IntegrandSpec {
  Kernel kernel = Kernel::moment_over_s;
  double sigma = 0.5;
  double r = 2.0;
  int m = 0;                 // derivative order for plain_moment
  Component component = Component::real;
  LineForm line = LineForm::full;
  bool normalize = false;    // divide by r^sigma (r^{it}-style integrands)
  double weight = 1.0;

  double omega() const { return std::abs(std::log(r)); }

  void validate() const {
    if (!(r > 0.0)) throw DomainError("IntegrandSpec: r must be positive");
    if (m < 0 || m > 2) throw DomainError("IntegrandSpec: derivative order must be 0, 1 or 2");
  }
};

// F(t) of the Master-theorem combination, defined for complex t so the
// reflection property F(t) + F(-i-t) = 0 can be probed directly.
inline Complex master_f(double r, Complex t) {
  const Complex i(0.0, 1.0);
  const Complex s1 = 0.5 + i * t;
  const Complex s2 = 1.5 - i * t;
  const double ln_r = std::log(r);
  return zeta(s1) * std::exp(s1 * ln_r) / s1 - zeta(s2) * std::exp(s2 * ln_r) / s2;
}

// Complex value of the kernel at real t (before component selection,
// weight, normalization and line scaling).
inline Complex kernel_value(const IntegrandSpec& spec, double t) {
  const double ln_r = std::log(spec.r);
  switch (spec.kernel) {
    case Kernel::sin_kernel:
      return Complex(t * std::sin(ln_r * t) / (spec.sigma * spec.sigma + t * t), 0.0);
    case Kernel::cos_kernel:
      return Complex(std::cos(ln_r * t) / (spec.sigma * spec.sigma + t * t), 0.0);
    case Kernel::master_f:
      return master_f(spec.r, Complex(t, 0.0));
    default:
      break;
  }
  const Complex s(spec.sigma, t);
  const Complex rs = std::exp(s * ln_r);
  switch (spec.kernel) {
    case Kernel::moment_over_s:
      return zeta(s) * rs / s;
    case Kernel::plain_moment:
      return detail::zeta_eval(s, spec.m)[static_cast<std::size_t>(spec.m)] * rs;
    case Kernel::inverse_square:
      return zeta(s) * rs / (s * s);
    case Kernel::derivative_over_s:
      return zeta_derivative(s, 1) * rs / s;
    case Kernel::deriv_over_s_minus_inverse_square: {
      const auto z = detail::zeta_eval(s, 1);
      return (z[1] / s - z[0] / (s * s)) * rs;
    }
    default:
      throw DomainError("kernel_value: unknown kernel");
  }
}

struct UnitElement {
  long index;
  double t_start;
  double value;
  double quad_error_estimate;
};

namespace detail {

inline double component_of(Complex z, Component c) {
  return c == Component::real ? z.real() : z.imag();
}

inline int min_initial_intervals(const IntegrandSpec& spec, double t_hi) {
  // Node floor: max(16, 8 ceil((omega + sigma_freq)/2pi)) where sigma_freq
  // tracks the ~ln(t) rad/unit local oscillation of zeta(sigma+it).
  const double two_pi = 6.28318530717958647692;
  const double sigma_freq = std::log(std::max(two_pi, std::abs(t_hi)));
  const int min_nodes =
      std::max(16.0, 8.0 * std::ceil((spec.omega() + sigma_freq) / two_pi));
  return (min_nodes + 14) / 15;
}

inline UnitElement evaluate_element(const IntegrandSpec& spec, long index, double a,
                                    double tol) {
  const double b = a + 1.0;
  const double scale =
      spec.weight * (spec.normalize ? std::exp(-spec.sigma * std::log(spec.r)) : 1.0);
  if (spec.sigma == 1.0 && spec.component == Component::imag && a <= 0.0 && b >= 0.0)
    throw DomainError(
        "unit_elements: imaginary component must not cross t = 0 at sigma = 1");
  QuadratureOptions opts;
  opts.min_intervals = min_initial_intervals(spec, std::max(std::abs(a), std::abs(b)));
  auto comp = [&spec](double t) { return component_of(kernel_value(spec, t), spec.component); };
  try {
    if (spec.component == Component::real) {
      const double factor = (spec.line == LineForm::full) ? 2.0 : 1.0;
      const auto res = integrate_panel_adaptive(comp, a, b, tol, opts);
      return {index, a, factor * scale * res.value, factor * std::abs(scale) * res.error};
    }
    if (spec.line == LineForm::half) {
      const auto res = integrate_panel_adaptive(comp, a, b, tol, opts);
      return {index, a, scale * res.value, std::abs(scale) * res.error};
    }
    // full-form imaginary part: evaluate the mirror panel explicitly
    const auto res = integrate_panel_adaptive(comp, a, b, tol, opts);
    const auto mirror = integrate_panel_adaptive(comp, -b, -a, tol, opts);
    return {index, a, scale * (res.value + mirror.value),
            std::abs(scale) * (res.error + mirror.error)};
  } catch (const NonConvergence& ex) {
    throw NonConvergence(std::string(ex.what()) + " (unit element " +
                             std::to_string(index) + ")",
                         index);
  }
}

}  // namespace detail

// One element per unit interval of [t_from, t_to], in index order.
// Panels are independent; workers > 1 evaluates them on a thread pool
// with results stored by index, so output is identical for any count.
inline std::vector<UnitElement> unit_elements(const IntegrandSpec& spec, double t_from,
                                              double t_to, double tol,
                                              unsigned workers = 1) {
  spec.validate();
  if (!(tol > 0.0)) throw DomainError("unit_elements: requires tol > 0");
  const double width = t_to - t_from;
  if (width < 1.0 - 1e-9) throw DomainError("unit_elements: requires t_to - t_from >= 1");
  const long count = std::lround(width);
  if (std::abs(width - static_cast<double>(count)) > 1e-9)
    throw DomainError("unit_elements: range must be a whole number of unit panels");

  std::vector<UnitElement> out(static_cast<std::size_t>(count));
  if (workers <= 1) {
    for (long j = 0; j < count; ++j)
      out[static_cast<std::size_t>(j)] =
          detail::evaluate_element(spec, j, t_from + static_cast<double>(j), tol);
    return out;
  }

  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  const long chunk = (count + static_cast<long>(workers) - 1) / static_cast<long>(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const long lo = static_cast<long>(w) * chunk;
    const long hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi, w] {
      try {
        for (long j = lo; j < hi; ++j)
          out[static_cast<std::size_t>(j)] =
              detail::evaluate_element(spec, j, t_from + static_cast<double>(j), tol);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& err : errors)
    if (err) std::rethrow_exception(err);
  return out;
}

}  // namespace zetamoment
