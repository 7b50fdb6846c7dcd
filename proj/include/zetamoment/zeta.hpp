#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "zetamoment/complex_gamma.hpp"
#include "zetamoment/errors.hpp"

// Riemann zeta and its first two derivatives on the strip
// -1 <= Re(s) <= 4, |Im(s)| <= 5000.
//
// Evaluation is Euler-Maclaurin applied to the Dirichlet series:
//
//   zeta(s) = sum_{j<N} j^-s + N^{1-s}/(s-1) + N^-s/2
//           + sum_{k=1..K} B_{2k}/(2k)! (s)_{2k-1} N^{-s-2k+1} + R_K
//
// with N growing like 0.55|t| so the remainder stays below ~1e-12
// relative everywhere in the strip.  Derivatives are the analytic
// d/ds of every term, not finite differences.  For Re(s) < 0 the
// value is routed through the functional equation
// zeta(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s) zeta(1-s) with the
// chi factor assembled in log space so large |t| cannot overflow.

namespace zetamoment {

struct ZetaComponents {
  double zeta_r;
  double zeta_i;
  double abs;
  double abs_sq;
  double arg;  // in (-pi, pi]
};

struct ZetaEvalParams {
  int series_terms;       // N
  int bernoulli_order;    // K
  double target_rel_error;

  static ZetaEvalParams for_height(double t) {
    const double at = std::abs(t);
    int n = static_cast<int>(std::ceil(0.55 * at)) + 8;
    if (n < 32) n = 32;
    return ZetaEvalParams{n, 13, 1e-11};
  }

  void validate(double t) const {
    const double at = std::abs(t);
    if (series_terms < static_cast<int>(std::ceil(at / 3.14159265358979323846)) + 10)
      throw DomainError("ZetaEvalParams: series_terms below the Euler-Maclaurin floor for this height");
    if (bernoulli_order < 2)
      throw DomainError("ZetaEvalParams: bernoulli_order must be >= 2");
  }
};

namespace detail {

// B_{2k}/(2k)! for k = 1..15 (the entry past bernoulli_order feeds the
// remainder estimate).
inline constexpr double kBernFact[15] = {
    (1.0 / 6.0) / 2.0,
    (-1.0 / 30.0) / 24.0,
    (1.0 / 42.0) / 720.0,
    (-1.0 / 30.0) / 40320.0,
    (5.0 / 66.0) / 3628800.0,
    (-691.0 / 2730.0) / 479001600.0,
    (7.0 / 6.0) / 87178291200.0,
    (-3617.0 / 510.0) / 20922789888000.0,
    (43867.0 / 798.0) / 6402373705728000.0,
    (-174611.0 / 330.0) / 2432902008176640000.0,
    (854513.0 / 138.0) / 1.1240007277776076800e21,
    (-236364091.0 / 2730.0) / 6.2044840173323943936e23,
    (8553103.0 / 6.0) / 4.0329146112660563558e26,
    (-23749461029.0 / 870.0) / 3.0488834461171386050e29,
    (8615841276005.0 / 14322.0) / 2.6525285981219105864e32};

inline const std::vector<double>& log_table() {
  static const std::vector<double> table = [] {
    std::vector<double> t(4097);
    for (std::size_t j = 1; j < t.size(); ++j) t[j] = std::log(static_cast<double>(j));
    return t;
  }();
  return table;
}

inline double log_j(std::size_t j) {
  const auto& t = log_table();
  return j < t.size() ? t[j] : std::log(static_cast<double>(j));
}

// Euler-Maclaurin core; valid for Re(s) > -(2K-1), s != 1, any Im(s)
// covered by params.  Returns {f, f', f''}; entries above m_max are 0.
inline std::array<Complex, 3> zeta_em(Complex s, const ZetaEvalParams& params, int m_max) {
  const int n = params.series_terms;
  const int kmax = params.bernoulli_order;
  const double ln_n = log_j(static_cast<std::size_t>(n));

  Complex f0(0.0, 0.0), f1(0.0, 0.0), f2(0.0, 0.0);
  for (int j = 1; j < n; ++j) {
    const double lj = log_j(static_cast<std::size_t>(j));
    const Complex e = std::exp(-s * lj);
    f0 += e;
    if (m_max >= 1) f1 -= lj * e;
    if (m_max >= 2) f2 += lj * lj * e;
  }

  // N^{1-s}/(s-1)
  const Complex u = s - 1.0;
  const Complex a = std::exp((1.0 - s) * ln_n) / u;
  f0 += a;
  if (m_max >= 1) f1 += -a * (ln_n + 1.0 / u);
  if (m_max >= 2) f2 += a * (ln_n * ln_n + 2.0 * ln_n / u + 2.0 / (u * u));

  // N^-s / 2
  const Complex half = 0.5 * std::exp(-s * ln_n);
  f0 += half;
  if (m_max >= 1) f1 += -ln_n * half;
  if (m_max >= 2) f2 += ln_n * ln_n * half;

  // Bernoulli corrections.  P is the rising factorial s(s+1)..(s+2k-2);
  // (P, P', P'') advance by the product rule so factors that vanish
  // (s = 0 or s = -1) stay finite.  E = N^{-s-(2k-1)}.
  Complex p = s, dp(1.0, 0.0), ddp(0.0, 0.0);
  Complex e = std::exp(-(s + 1.0) * ln_n);
  const double inv_nsq = 1.0 / (static_cast<double>(n) * static_cast<double>(n));
  for (int k = 1; k <= kmax; ++k) {
    const double c = kBernFact[k - 1];
    f0 += c * p * e;
    if (m_max >= 1) f1 += c * e * (dp - ln_n * p);
    if (m_max >= 2) f2 += c * e * (ddp - 2.0 * ln_n * dp + ln_n * ln_n * p);
    if (k < kmax) {
      for (int step = 2 * k - 1; step <= 2 * k; ++step) {
        const Complex q = s + static_cast<double>(step);
        ddp = ddp * q + 2.0 * dp;
        dp = dp * q + p;
        p *= q;
      }
      e *= inv_nsq;
    }
  }

  // Remainder bound: first omitted correction scaled by |s+2K+1|/(sigma+2K+1).
  {
    const Complex q1 = s + static_cast<double>(2 * kmax - 1);
    const Complex q2 = s + static_cast<double>(2 * kmax);
    const Complex p_next = p * q1 * q2;
    const Complex e_next = e * inv_nsq;
    const double rem = std::abs(kBernFact[kmax] * p_next * e_next) *
                       std::abs(s + static_cast<double>(2 * kmax + 1)) /
                       (s.real() + static_cast<double>(2 * kmax + 1));
    if (!(rem <= params.target_rel_error * std::max(0.1, std::abs(f0))))
      throw NonConvergence("zeta: Euler-Maclaurin remainder above target accuracy");
  }
  return {f0, f1, f2};
}

// zeta(s) = chi(s) zeta(1-s) for Re(s) < 0.5; chi assembled in log space.
inline Complex zeta_via_functional_equation(Complex s) {
  static const double ln2 = 0.69314718055994530942;
  static const double ln_pi = 1.1447298858494001741;
  static const double pi = 3.14159265358979323846;
  const Complex one_minus_s = 1.0 - s;
  const Complex log_chi = s * ln2 + (s - 1.0) * ln_pi + log_sin(0.5 * pi * s) +
                          log_gamma(one_minus_s);
  const Complex z = zeta_em(one_minus_s, ZetaEvalParams::for_height(one_minus_s.imag()), 0)[0];
  return std::exp(log_chi) * z;
}

inline void check_domain(Complex s) {
  if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
    throw DomainError("zeta: non-finite argument");
  if (std::abs(s - Complex(1.0, 0.0)) < 1e-12) throw PoleAtOne();
  if (s.real() < -1.0 - 1e-9 || s.real() > 4.0 + 1e-9 || std::abs(s.imag()) > 5000.0 + 1e-9)
    throw DomainError("zeta: argument outside the supported rectangle [-1,4] x [-5000,5000]");
}

inline std::array<Complex, 3> zeta_eval(Complex s, int m_max) {
  check_domain(s);
  if (s.imag() < 0.0) {
    // Schwarz reflection, applied bitwise so conjugate symmetry is exact.
    auto r = zeta_eval(std::conj(s), m_max);
    for (auto& v : r) v = std::conj(v);
    return r;
  }
  const ZetaEvalParams params = ZetaEvalParams::for_height(s.imag());
  std::array<Complex, 3> out{Complex(0, 0), Complex(0, 0), Complex(0, 0)};
  if (s.real() < 0.0) {
    if (m_max > 0) out = zeta_em(s, params, m_max);
    out[0] = zeta_via_functional_equation(s);
  } else {
    out = zeta_em(s, params, m_max);
  }
  for (int m = 0; m <= m_max; ++m)
    if (!std::isfinite(out[m].real()) || !std::isfinite(out[m].imag()))
      throw Error("zeta: non-finite result");
  return out;
}

}  // namespace detail

inline Complex zeta(Complex s) { return detail::zeta_eval(s, 0)[0]; }

/// m-th derivative of zeta, m in {1, 2}.
inline Complex zeta_derivative(Complex s, int m) {
  if (m < 1 || m > 2) throw DomainError("zeta_derivative: m must be 1 or 2");
  return detail::zeta_eval(s, m)[static_cast<std::size_t>(m)];
}

inline ZetaComponents zeta_components(double sigma, double t) {
  const Complex z = zeta(Complex(sigma, t));
  ZetaComponents c;
  c.zeta_r = z.real();
  c.zeta_i = z.imag();
  c.abs_sq = z.real() * z.real() + z.imag() * z.imag();
  c.abs = std::sqrt(c.abs_sq);
  c.arg = std::atan2(z.imag(), z.real());
  if (c.arg <= -3.14159265358979323846) c.arg = 3.14159265358979323846;
  return c;
}

}  // namespace zetamoment
