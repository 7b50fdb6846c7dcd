#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "zetamoment/errors.hpp"
#include "zetamoment/zeta.hpp"

// Uniform grids of zeta samples persisted as plain text, used by the
// correlation machinery to amortize signal sampling.  Quadrature of the
// moment integrands never reads the cache; it always calls the kernel.
//
// File format, one header line then one sample per line:
//   # zeta-cache v1 sigma=<g17> t0=<g17> dt=<g17> n=<int>
//   t,re,im
// Values are printed with 17 significant digits so a write/read cycle
// is bit-exact.

namespace zetamoment {

enum class SignalComponent { abs, abs_sq, re, im };

struct CacheGrid {
  double sigma = 0.5;
  double t_start = 0.0;
  double dt = 0.05;
  std::vector<Complex> samples;

  long count() const { return static_cast<long>(samples.size()); }
  double t_end() const { return t_start + dt * static_cast<double>(count() - 1); }

  double t_at(long i) const { return t_start + dt * static_cast<double>(i); }

  // 4-point (cubic) Lagrange interpolation on the uniform grid.
  Complex interpolate(double t) const {
    const long n = count();
    if (n < 4) throw DomainError("CacheGrid: too few samples to interpolate");
    const double x = (t - t_start) / dt;
    if (x < -1e-9 || x > static_cast<double>(n - 1) + 1e-9)
      throw DomainError("CacheGrid: interpolation abscissa outside the grid");
    long i = static_cast<long>(std::floor(x));
    i = std::max(1L, std::min(n - 3, i));
    const double u = x - static_cast<double>(i);
    const double c0 = -u * (u - 1.0) * (u - 2.0) / 6.0;
    const double c1 = (u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0;
    const double c2 = -(u + 1.0) * u * (u - 2.0) / 2.0;
    const double c3 = (u + 1.0) * u * (u - 1.0) / 6.0;
    return c0 * samples[i - 1] + c1 * samples[i] + c2 * samples[i + 1] +
           c3 * samples[i + 2];
  }

  std::function<double(double)> signal(SignalComponent comp) const {
    return [this, comp](double t) {
      const Complex z = interpolate(t);
      switch (comp) {
        case SignalComponent::abs: return std::abs(z);
        case SignalComponent::abs_sq: return std::norm(z);
        case SignalComponent::re: return z.real();
        case SignalComponent::im: return z.imag();
      }
      return 0.0;
    };
  }
};

inline double signal_component_of(Complex z, SignalComponent comp) {
  switch (comp) {
    case SignalComponent::abs: return std::abs(z);
    case SignalComponent::abs_sq: return std::norm(z);
    case SignalComponent::re: return z.real();
    case SignalComponent::im: return z.imag();
  }
  return 0.0;
}

// Direct (uncached) zeta signal.
inline std::function<double(double)> zeta_signal(double sigma, SignalComponent comp) {
  return [sigma, comp](double t) {
    return signal_component_of(zeta(Complex(sigma, t)), comp);
  };
}

inline CacheGrid compute_grid(double sigma, double t0, double dt, long count) {
  if (!(dt > 0.0)) throw DomainError("cache: dt must be positive");
  if (count < 1) throw DomainError("cache: count must be >= 1");
  CacheGrid grid;
  grid.sigma = sigma;
  grid.t_start = t0;
  grid.dt = dt;
  grid.samples.resize(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i)
    grid.samples[static_cast<std::size_t>(i)] =
        zeta(Complex(sigma, t0 + dt * static_cast<double>(i)));
  return grid;
}

// Atomic replace-on-write: emit to <path>.tmp, then rename.
inline void write_cache(const CacheGrid& grid, const std::string& path) {
  const std::string tmp = path + ".tmp";
  std::FILE* f = std::fopen(tmp.c_str(), "w");
  if (!f) throw Error("cache: cannot open " + tmp + " for writing");
  std::fprintf(f, "# zeta-cache v1 sigma=%.17g t0=%.17g dt=%.17g n=%ld\n", grid.sigma,
               grid.t_start, grid.dt, grid.count());
  for (long i = 0; i < grid.count(); ++i) {
    const Complex& z = grid.samples[static_cast<std::size_t>(i)];
    std::fprintf(f, "%.17g,%.17g,%.17g\n", grid.t_at(i), z.real(), z.imag());
  }
  std::fclose(f);
  std::filesystem::rename(tmp, path);
}

inline CacheGrid read_cache(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "r");
  if (!f) throw Error("cache: cannot open " + path);
  CacheGrid grid;
  long n = 0;
  if (std::fscanf(f, "# zeta-cache v1 sigma=%lg t0=%lg dt=%lg n=%ld\n", &grid.sigma,
                  &grid.t_start, &grid.dt, &n) != 4) {
    std::fclose(f);
    throw IncompatibleCache("cache: unrecognized header in " + path);
  }
  grid.samples.resize(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    double t, re, im;
    if (std::fscanf(f, "%lg,%lg,%lg\n", &t, &re, &im) != 3) {
      std::fclose(f);
      throw IncompatibleCache("cache: truncated sample block in " + path);
    }
    grid.samples[static_cast<std::size_t>(i)] = Complex(re, im);
  }
  std::fclose(f);
  return grid;
}

struct CacheWarmResult {
  CacheGrid grid;
  bool loaded_from_disk;
};

// Compute the grid, or load it if a file with the exact requested header
// already exists at path.  A file with a different header is an error,
// never silently overwritten.
inline CacheWarmResult cache_warm(double sigma, double t0, double dt, long count,
                                  const std::string& path) {
  if (std::filesystem::exists(path)) {
    CacheGrid grid = read_cache(path);
    if (grid.sigma != sigma || grid.t_start != t0 || grid.dt != dt ||
        grid.count() != count)
      throw IncompatibleCache("cache: header of " + path + " does not match the request");
    return {std::move(grid), true};
  }
  CacheGrid grid = compute_grid(sigma, t0, dt, count);
  write_cache(grid, path);
  return {std::move(grid), false};
}

}  // namespace zetamoment
