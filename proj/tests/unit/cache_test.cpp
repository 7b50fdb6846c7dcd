#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "zetamoment/correlation.hpp"
#include "zetamoment/zeta_cache.hpp"

using namespace zetamoment;

namespace {

std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_SUITE("cache") {

TEST_CASE("write/read round-trips bit for bit") {
  const std::string path = temp_path("zm_cache_roundtrip.txt");
  std::filesystem::remove(path);
  // the documented example grid: sigma=1/2, t in [0, 380], dt = 0.05
  const auto warmed = cache_warm(0.5, 0.0, 0.05, 7601, path);
  CHECK_FALSE(warmed.loaded_from_disk);
  CHECK(warmed.grid.count() == 7601);
  const CacheGrid back = read_cache(path);
  REQUIRE(back.count() == warmed.grid.count());
  CHECK(back.sigma == warmed.grid.sigma);
  CHECK(back.dt == warmed.grid.dt);
  for (long i = 0; i < back.count(); ++i) {
    CHECK(back.samples[i].real() == warmed.grid.samples[i].real());
    CHECK(back.samples[i].imag() == warmed.grid.samples[i].imag());
  }
  std::filesystem::remove(path);
}

TEST_CASE("second warm loads instead of recomputing") {
  const std::string path = temp_path("zm_cache_twice.txt");
  std::filesystem::remove(path);
  const auto first = cache_warm(0.75, 0.0, 0.05, 401, path);
  CHECK_FALSE(first.loaded_from_disk);
  const auto second = cache_warm(0.75, 0.0, 0.05, 401, path);
  CHECK(second.loaded_from_disk);
  CHECK(second.grid.samples == first.grid.samples);
  std::filesystem::remove(path);
}

TEST_CASE("header mismatch is an error, not an overwrite") {
  const std::string path = temp_path("zm_cache_mismatch.txt");
  std::filesystem::remove(path);
  (void)cache_warm(0.5, 0.0, 0.05, 101, path);
  CHECK_THROWS_AS((void)cache_warm(0.75, 0.0, 0.05, 101, path), IncompatibleCache);
  CHECK_THROWS_AS((void)cache_warm(0.5, 0.0, 0.02, 101, path), IncompatibleCache);
  CHECK_THROWS_AS((void)cache_warm(0.5, 0.0, 0.05, 201, path), IncompatibleCache);
  // the original file is intact
  const auto again = cache_warm(0.5, 0.0, 0.05, 101, path);
  CHECK(again.loaded_from_disk);
  std::filesystem::remove(path);
}

TEST_CASE("unreadable files are rejected") {
  const std::string path = temp_path("zm_cache_garbage.txt");
  std::FILE* f = std::fopen(path.c_str(), "w");
  REQUIRE(f);
  std::fprintf(f, "not a cache\n");
  std::fclose(f);
  CHECK_THROWS_AS((void)read_cache(path), IncompatibleCache);
  std::filesystem::remove(path);
}

TEST_CASE("cubic interpolation on an analytic grid") {
  CacheGrid grid;
  grid.sigma = 0.0;
  grid.t_start = 0.0;
  grid.dt = 0.02;
  grid.samples.resize(501);
  for (long i = 0; i <= 500; ++i) {
    const double t = 0.02 * i;
    grid.samples[i] = Complex(std::cos(1.7 * t), std::sin(1.7 * t));
  }
  for (double t = 0.31; t < 9.5; t += 0.777) {
    const Complex got = grid.interpolate(t);
    const Complex want(std::cos(1.7 * t), std::sin(1.7 * t));
    CHECK(std::abs(got - want) < 1e-7);
  }
  CHECK_THROWS_AS((void)grid.interpolate(10.5), DomainError);
  CHECK_THROWS_AS((void)grid.interpolate(-0.5), DomainError);
}

TEST_CASE("cached signal tracks the direct kernel within the interpolation budget") {
  const CacheGrid grid = compute_grid(0.5, 0.0, 0.02, 1401);  // [0, 28]
  const auto cached = grid.signal(SignalComponent::abs);
  const auto direct = zeta_signal(0.5, SignalComponent::abs);
  for (double t = 0.5; t <= 27.5; t += 0.613)
    CHECK(std::abs(cached(t) - direct(t)) < 1e-6);
}

TEST_CASE("cache transparency for correlation reports") {
  const CacheGrid grid = compute_grid(0.5, 0.0, 0.02, 1401);
  const auto cached = grid.signal(SignalComponent::abs);
  const auto direct = zeta_signal(0.5, SignalComponent::abs);
  const auto a = shifted_correlation(cached, 0.0, 20.0, 5.0, 1e-9);
  const auto b = shifted_correlation(direct, 0.0, 20.0, 5.0, 1e-9);
  CHECK(std::abs(a.cor - b.cor) < 1e-6);
}

}  // TEST_SUITE cache
