// Command-line front end: point evaluation, experiment traces, suite
// verification, periodicity reports, segment correlation and cache
// management.  All numeric output meant for files uses 17 significant
// digits so runs are reproducible bit for bit.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zetamoment/correlation.hpp"
#include "zetamoment/experiment.hpp"
#include "zetamoment/zeta_cache.hpp"

using namespace zetamoment;

namespace {

struct GlobalOpts {
  std::string config_path;
  std::string out_dir = ".";
  unsigned workers = 1;
  double tol = 1e-9;
};

struct InlineExperiment {
  std::string kernel = "plain_moment";
  double sigma = 0.5;
  double r = 2.1;
  int m = 0;
  std::string component = "real";
  std::string line = "half";
  bool normalize = false;
  double weight = 1.0;
  std::string identity;
  double T_max = 400.0;
  std::string asymptote = "oracle";
  int cesaro_order = 1;
  std::string value_check = "endpoint";
};

void add_inline_options(CLI::App* cmd, InlineExperiment& ex) {
  cmd->add_option("--kernel", ex.kernel,
                  "moment_over_s|plain_moment|inverse_square|derivative_over_s|"
                  "deriv_minus_inv_square|master_f|sin_kernel|cos_kernel");
  cmd->add_option("--sigma", ex.sigma, "Re(s) of the integrand");
  cmd->add_option("--r", ex.r, "moment parameter r > 0");
  cmd->add_option("--m", ex.m, "derivative order for plain_moment");
  cmd->add_option("--component", ex.component, "real|imag");
  cmd->add_option("--line", ex.line, "half|full");
  cmd->add_flag("--normalize", ex.normalize, "divide the integrand by r^sigma");
  cmd->add_option("--weight", ex.weight, "scalar weight on the integrand");
  cmd->add_option("--identity", ex.identity, "verify a named identity instead");
  cmd->add_option("--T", ex.T_max, "upper integration limit (unit panels)");
  cmd->add_option("--asymptote", ex.asymptote, "oracle|none|<number>");
  cmd->add_option("--cesaro-order", ex.cesaro_order, "summation passes before the mean");
  cmd->add_option("--value-check", ex.value_check, "endpoint|closest_approach");
}

ExperimentConfig to_config(const InlineExperiment& ex, const GlobalOpts& g) {
  ExperimentConfig cfg;
  if (!ex.identity.empty()) {
    cfg = experiment_for_identity(detail::parse_identity(ex.identity, 0), ex.sigma, ex.r,
                                  ex.T_max);
    cfg.id = ex.identity;
  } else {
    cfg.id = "cli";
    cfg.integrand.kernel = detail::parse_kernel(ex.kernel, 0);
    cfg.integrand.sigma = ex.sigma;
    cfg.integrand.r = ex.r;
    cfg.integrand.m = ex.m;
    cfg.integrand.component = ex.component == "imag" ? Component::imag : Component::real;
    cfg.integrand.line = ex.line == "full" ? LineForm::full : LineForm::half;
    cfg.integrand.normalize = ex.normalize;
    cfg.integrand.weight = ex.weight;
    cfg.T_max = ex.T_max;
    cfg.value_check = ex.value_check == "closest_approach" ? ValueCheck::closest_approach
                                                           : ValueCheck::endpoint;
  }
  cfg.cesaro_order = ex.cesaro_order;
  cfg.panel_tol = g.tol;
  // "oracle" (the default) keeps whatever the builder chose.
  if (ex.asymptote == "none") {
    cfg.asymptote_source = AsymptoteSource::none;
  } else if (ex.asymptote != "oracle") {
    cfg.asymptote_source = AsymptoteSource::explicit_value;
    cfg.asymptote_value = std::stod(ex.asymptote);
  }
  return cfg;
}

ExperimentConfig select_experiment(const GlobalOpts& g, const std::string& id,
                                   const InlineExperiment& ex) {
  if (!id.empty()) {
    if (g.config_path.empty()) throw Error("--id requires --config");
    for (auto& cfg : parse_config_file(g.config_path))
      if (cfg.id == id) return cfg;
    throw Error("no experiment '" + id + "' in " + g.config_path);
  }
  return to_config(ex, g);
}

void print_result(const ExperimentResult& res) {
  std::printf("experiment %s: T=%g elements=%zu\n", res.config.id.c_str(),
              res.config.T_max, res.trace.size());
  if (res.prediction) {
    if (res.prediction->kind == PredictionKind::finite)
      std::printf("  oracle     %.10g\n", res.prediction->value);
    else if (res.prediction->kind == PredictionKind::divergent)
      std::printf("  oracle     divergent O(T^%g)\n", res.prediction->order_exponent);
    else
      std::printf("  oracle     indeterminate\n");
  }
  std::printf("  measured   %.10g\n", res.measured);
  std::printf("  mean[T]    %.10g\n", res.trace.means.back());
  std::printf("  slope      %.6g  (fit residual %.3g)\n", res.classification.slope,
              res.classification.fit_residual);
  std::printf("  verdict    %s\n", verdict_name(res.verdict));
}

int run_cli(int argc, char** argv) {
  CLI::App app{"zetamoment: Cesaro-regularized moment integrals of the Riemann zeta function"};
  app.require_subcommand(1);
  GlobalOpts g;
  app.add_option("--config", g.config_path, "experiment config file");
  app.add_option("--out", g.out_dir, "output directory for CSV files");
  app.add_option("--workers", g.workers, "panel evaluation threads");
  app.add_option("--tol", g.tol, "panel tolerance");

  // zeta: point evaluation
  auto* zeta_cmd = app.add_subcommand("zeta", "evaluate zeta(sigma + it)");
  double zs = 2.0, zt = 0.0;
  int zm = 0;
  zeta_cmd->add_option("--sigma", zs, "Re(s)")->required();
  zeta_cmd->add_option("--t", zt, "Im(s)")->required();
  zeta_cmd->add_option("--m", zm, "derivative order 0..2");
  zeta_cmd->callback([&] {
    if (zm == 0) {
      const auto c = zeta_components(zs, zt);
      std::printf("re      %.17g\nim      %.17g\nabs     %.17g\nabs_sq  %.17g\narg     %.17g\n",
                  c.zeta_r, c.zeta_i, c.abs, c.abs_sq, c.arg);
    } else {
      const Complex d = zeta_derivative(Complex(zs, zt), zm);
      std::printf("re %.17g\nim %.17g\n", d.real(), d.imag());
    }
  });

  // trace: run one experiment, emit CSV
  auto* trace_cmd = app.add_subcommand("trace", "run one experiment and write its trace CSV");
  InlineExperiment tex;
  std::string trace_id;
  trace_cmd->add_option("--id", trace_id, "experiment id from --config");
  add_inline_options(trace_cmd, tex);
  trace_cmd->callback([&] {
    ExperimentConfig cfg = select_experiment(g, trace_id, tex);
    const auto res = run_experiment(cfg, g.workers);
    std::filesystem::create_directories(g.out_dir);
    const std::string path = g.out_dir + "/" + cfg.id + ".csv";
    write_trace_csv(res.trace, path);
    print_result(res);
    std::printf("  csv        %s\n", path.c_str());
  });

  // verify: run a suite
  auto* verify_cmd = app.add_subcommand("verify", "run a config suite and print a table");
  verify_cmd->callback([&] {
    if (g.config_path.empty()) throw Error("verify requires --config");
    const auto suite = parse_config_file(g.config_path);
    const auto summary = verify_all(suite, g.workers, &std::cout);
    if (summary.any_mismatch) throw Error("suite has mismatches");
  });

  // periodicity: crossing/closest-approach/period report
  auto* period_cmd = app.add_subcommand("periodicity", "crossings, approach minima, period");
  InlineExperiment pex;
  pex.sigma = 0.5;
  pex.r = 2.1;
  pex.T_max = 2000;
  std::string period_id;
  period_cmd->add_option("--id", period_id, "experiment id from --config");
  add_inline_options(period_cmd, pex);
  period_cmd->callback([&] {
    ExperimentConfig cfg = select_experiment(g, period_id, pex);
    const auto res = run_experiment(cfg, g.workers);
    if (std::isnan(res.asymptote))
      throw Error("periodicity needs an oracle or explicit asymptote");
    const double rho = base_period(cfg.integrand.r);
    std::printf("asymptote        %.10g\n", res.asymptote);
    std::printf("base period rho  %.6f\n", rho);
    const auto cr = crossings_directed(res.trace, res.asymptote);
    std::printf("crossings (%zu):\n", cr.size());
    for (const auto& c : cr)
      std::printf("  T=%.3f %s  T/rho=%.3f\n", c.t, c.direction < 0 ? "down" : "up  ",
                  c.t / rho);
    const auto mins = principal_minima(res.trace, res.asymptote,
                                       0.4 * beat_period(cfg.integrand.r),
                                       0.15 * std::abs(res.asymptote));
    std::printf("principal approach minima (%zu):\n", mins.size());
    for (const auto& m : mins) std::printf("  T=%.3f distance=%+.6f\n", m.t, m.distance);
    try {
      const auto pe = period_estimate(res.trace, res.asymptote);
      std::printf("period estimate  %.4f  (%.3f rho)  phase drift %.4f\n", pe.period,
                  pe.period / rho, pe.phase_drift);
    } catch (const InsufficientCrossings& ex) {
      std::printf("period estimate  unavailable: %s\n", ex.what());
    }
  });

  // correlate: one offset
  auto* corr_cmd = app.add_subcommand("correlate", "segment correlation at a single offset");
  double cs = 0.5, cl1 = 0.0, clen = 126.0, crho = 126.1;
  std::string ccomp = "abs", ccache;
  corr_cmd->add_option("--sigma", cs);
  corr_cmd->add_option("--component", ccomp, "abs|abs_sq|re|im");
  corr_cmd->add_option("--L1", cl1);
  corr_cmd->add_option("--len", clen);
  corr_cmd->add_option("--rho", crho)->required();
  corr_cmd->add_option("--cache", ccache, "zeta sample cache file (warmed on demand)");
  auto parse_component = [](const std::string& v) {
    if (v == "abs") return SignalComponent::abs;
    if (v == "abs_sq") return SignalComponent::abs_sq;
    if (v == "re") return SignalComponent::re;
    if (v == "im") return SignalComponent::im;
    throw Error("unknown component '" + v + "'");
  };
  auto make_signal = [&](double sigma, SignalComponent comp, double t_hi,
                         const std::string& cache_path, CacheGrid& storage) -> Signal {
    if (cache_path.empty()) return zeta_signal(sigma, comp);
    if (std::filesystem::exists(cache_path)) {
      storage = read_cache(cache_path);
      if (storage.sigma != sigma || storage.t_start > 1e-12 ||
          storage.t_end() < t_hi - 1e-9)
        throw IncompatibleCache("cache " + cache_path + " does not cover sigma=" +
                                std::to_string(sigma) + ", t in [0, " +
                                std::to_string(t_hi) + "]");
      return storage.signal(comp);
    }
    const double dt = 0.02;
    const long count = static_cast<long>(std::ceil(t_hi / dt)) + 4;
    storage = cache_warm(sigma, 0.0, dt, count, cache_path).grid;
    return storage.signal(comp);
  };
  static CacheGrid corr_grid;
  corr_cmd->callback([&] {
    const auto comp = parse_component(ccomp);
    const Signal f = make_signal(cs, comp, cl1 + clen + crho + 1.0, ccache, corr_grid);
    auto rep = shifted_correlation(f, cl1, clen, crho, 1e-7);
    rep.sigma = cs;
    rep.component = comp;
    std::printf("rho=%.6g cor=%.10g cov=%.10g var_f=%.10g var_g=%.10g e_f=%.10g e_g=%.10g\n",
                rep.rho, rep.cor, rep.cov, rep.var_f, rep.var_g, rep.e_f, rep.e_g);
  });

  // rho-scan
  auto* scan_cmd = app.add_subcommand("rho-scan", "correlation versus offset");
  double ss = 0.5, sl1 = 0.0, slen = 126.0, sfrom = 120.0, sto = 145.0, sstep = 0.1;
  std::string scomp = "abs", scache, sout;
  scan_cmd->add_option("--sigma", ss);
  scan_cmd->add_option("--component", scomp);
  scan_cmd->add_option("--L1", sl1);
  scan_cmd->add_option("--len", slen);
  scan_cmd->add_option("--rho-from", sfrom)->required();
  scan_cmd->add_option("--rho-to", sto)->required();
  scan_cmd->add_option("--rho-step", sstep);
  scan_cmd->add_option("--cache", scache, "zeta sample cache file (warmed on demand)");
  scan_cmd->add_option("--csv", sout, "write rho,cor,... rows to this file");
  static CacheGrid scan_grid;
  scan_cmd->callback([&] {
    const auto comp = parse_component(scomp);
    const Signal f = make_signal(ss, comp, sl1 + slen + sto + 1.0, scache, scan_grid);
    auto scan = rho_scan(f, sl1, slen, sfrom, sto, sstep, 1e-7);
    if (!sout.empty()) {
      write_scan_csv(scan, sout);
      std::printf("csv %s (%zu rows)\n", sout.c_str(), scan.reports.size());
    }
    std::printf("peaks (cor > 0.5):\n");
    for (const auto& p : scan.peaks) std::printf("  rho=%.4f cor=%.4f\n", p.rho, p.cor);
    if (scan.peaks.empty()) std::printf("  none\n");
  });

  // cache warm
  auto* cache_cmd = app.add_subcommand("cache", "zeta sample cache management");
  auto* warm_cmd = cache_cmd->add_subcommand("warm", "compute or load a sample grid");
  double ws = 0.5, wt0 = 0.0, wdt = 0.05;
  long wcount = 1001;
  std::string wpath;
  warm_cmd->add_option("--sigma", ws)->required();
  warm_cmd->add_option("--t0", wt0);
  warm_cmd->add_option("--dt", wdt);
  warm_cmd->add_option("--count", wcount)->required();
  warm_cmd->add_option("--path", wpath)->required();
  warm_cmd->callback([&] {
    const auto res = cache_warm(ws, wt0, wdt, wcount, wpath);
    std::printf("%s %ld samples sigma=%g t=[%g, %g] dt=%g -> %s\n",
                res.loaded_from_disk ? "loaded" : "computed", res.grid.count(),
                res.grid.sigma, res.grid.t_start, res.grid.t_end(), res.grid.dt,
                wpath.c_str());
  });

  CLI11_PARSE(app, argc, argv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return 1;
  }
}
