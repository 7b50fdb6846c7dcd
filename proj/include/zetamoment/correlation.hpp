#pragma once

#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "zetamoment/quadrature.hpp"
#include "zetamoment/zeta_cache.hpp"

// Interval statistics of zeta-derived signals: expectation, variance,
// covariance and the correlation coefficient between shifted segments,
// plus rho-scans with peak detection.

namespace zetamoment {

using Signal = std::function<double(double)>;

struct SegmentCorrReport {
  double sigma = 0.0;
  SignalComponent component = SignalComponent::abs;
  double L1 = 0.0;
  double L2 = 0.0;
  double rho = 0.0;
  double e_f = 0.0, e_g = 0.0;
  double var_f = 0.0, var_g = 0.0;
  double cov = 0.0, cor = 0.0;
};

// E(h) over [L1, L2]: the interval mean.
inline double expectation(const Signal& f, double L1, double L2, double tol = 1e-8) {
  if (!(L2 > L1)) throw DomainError("expectation: requires L2 > L1");
  const auto r = integrate_panel_adaptive(f, L1, L2, tol);
  return r.value / (L2 - L1);
}

namespace detail {

struct SegmentStats {
  double mean;
  double var;
};

inline SegmentStats segment_stats(const Signal& f, double L1, double L2, double tol) {
  const double mean = expectation(f, L1, L2, tol);
  const Signal sq = [&f](double t) {
    const double v = f(t);
    return v * v;
  };
  const double mean_sq = expectation(sq, L1, L2, tol);
  return {mean, mean_sq - mean * mean};
}

inline SegmentCorrReport correlate_with_stats(const Signal& f, const Signal& g,
                                              double L1, double L2, double tol,
                                              const SegmentStats& sf,
                                              const SegmentStats& sg) {
  if (sf.var < 1e-14 || sg.var < 1e-14)
    throw DegenerateSegment("correlate: variance underflow on [" + std::to_string(L1) +
                            ", " + std::to_string(L2) + "]");
  const Signal prod = [&f, &g](double t) { return f(t) * g(t); };
  const double e_fg = expectation(prod, L1, L2, tol);
  SegmentCorrReport rep;
  rep.L1 = L1;
  rep.L2 = L2;
  rep.e_f = sf.mean;
  rep.e_g = sg.mean;
  rep.var_f = sf.var;
  rep.var_g = sg.var;
  rep.cov = e_fg - sf.mean * sg.mean;
  rep.cor = rep.cov / std::sqrt(sf.var * sg.var);
  if (rep.cor > 1.0 && rep.cor < 1.0 + 1e-12) rep.cor = 1.0;
  if (rep.cor < -1.0 && rep.cor > -1.0 - 1e-12) rep.cor = -1.0;
  return rep;
}

}  // namespace detail

inline SegmentCorrReport correlate(const Signal& f, const Signal& g, double L1,
                                   double L2, double tol = 1e-8) {
  if (!(L2 > L1)) throw DomainError("correlate: requires L2 > L1");
  const auto sf = detail::segment_stats(f, L1, L2, tol);
  const auto sg = detail::segment_stats(g, L1, L2, tol);
  return detail::correlate_with_stats(f, g, L1, L2, tol, sf, sg);
}

// Cor(f(t), f(t+rho)) over [L1, L1+seg_len] for a provided signal.
inline SegmentCorrReport shifted_correlation(const Signal& f, double L1,
                                             double seg_len, double rho,
                                             double tol = 1e-8) {
  if (L1 < 0.0) throw DomainError("shifted_correlation: requires L1 >= 0");
  if (!(seg_len > 0.0)) throw DomainError("shifted_correlation: requires seg_len > 0");
  if (rho < 0.0) throw DomainError("shifted_correlation: requires rho >= 0");
  const Signal g = [&f, rho](double t) { return f(t + rho); };
  SegmentCorrReport rep = correlate(f, g, L1, L1 + seg_len, tol);
  rep.rho = rho;
  return rep;
}

// Convenience form: samples |zeta(sigma+it)| (or the chosen component)
// directly from the kernel.
inline SegmentCorrReport shifted_correlation(double sigma, SignalComponent component,
                                             double L1, double seg_len, double rho,
                                             double tol = 1e-8) {
  SegmentCorrReport rep =
      shifted_correlation(zeta_signal(sigma, component), L1, seg_len, rho, tol);
  rep.sigma = sigma;
  rep.component = component;
  return rep;
}

struct CorrelationPeak {
  double rho;  // parabolically refined location
  double cor;
};

struct RhoScanResult {
  std::vector<SegmentCorrReport> reports;  // ascending rho
  std::vector<CorrelationPeak> peaks;      // local maxima with cor > 0.5
};

inline RhoScanResult rho_scan(const Signal& f, double L1, double seg_len,
                              double rho_from, double rho_to, double rho_step,
                              double tol = 1e-8) {
  if (!(rho_step > 0.0)) throw DomainError("rho_scan: requires rho_step > 0");
  if (rho_to < rho_from) throw DomainError("rho_scan: requires rho_to >= rho_from");
  RhoScanResult out;
  const double L2 = L1 + seg_len;
  const auto sf = detail::segment_stats(f, L1, L2, tol);
  const long n = static_cast<long>(std::floor((rho_to - rho_from) / rho_step + 1e-9)) + 1;
  for (long i = 0; i < n; ++i) {
    const double rho = rho_from + rho_step * static_cast<double>(i);
    const Signal g = [&f, rho](double t) { return f(t + rho); };
    const auto sg = detail::segment_stats(g, L1, L2, tol);
    SegmentCorrReport rep = detail::correlate_with_stats(f, g, L1, L2, tol, sf, sg);
    rep.rho = rho;
    out.reports.push_back(rep);
  }
  for (std::size_t i = 1; i + 1 < out.reports.size(); ++i) {
    const double c0 = out.reports[i - 1].cor;
    const double c1 = out.reports[i].cor;
    const double c2 = out.reports[i + 1].cor;
    if (c1 > 0.5 && c1 >= c0 && c1 >= c2 && (c1 > c0 || c1 > c2)) {
      const double denom = c0 - 2.0 * c1 + c2;
      double shift = 0.0, peak = c1;
      if (denom < 0.0) {
        shift = 0.5 * (c0 - c2) / denom;
        peak = c1 - 0.25 * (c0 - c2) * shift;
      }
      out.peaks.push_back({out.reports[i].rho + shift * rho_step, peak});
    }
  }
  return out;
}

inline RhoScanResult rho_scan(double sigma, SignalComponent component, double L1,
                              double seg_len, double rho_from, double rho_to,
                              double rho_step, double tol = 1e-8) {
  RhoScanResult out = rho_scan(zeta_signal(sigma, component), L1, seg_len, rho_from,
                               rho_to, rho_step, tol);
  for (auto& rep : out.reports) {
    rep.sigma = sigma;
    rep.component = component;
  }
  return out;
}

inline void write_scan_csv(const RhoScanResult& scan, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw Error("scan: cannot open " + path + " for writing");
  std::fprintf(f, "rho,cor,cov,var_f,var_g,e_f,e_g\n");
  for (const auto& r : scan.reports)
    std::fprintf(f, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.rho, r.cor, r.cov,
                 r.var_f, r.var_g, r.e_f, r.e_g);
  std::fclose(f);
}

}  // namespace zetamoment
