// Command-line front end: variance runs, asymptotic fits, constants,
// dyadic-block reports, equidistribution counts, exponential-sum sweeps,
// the reduced-main-term comparison and plot-script emission.
//
// Exit codes: 0 success, 2 config error, 3 infeasible window,
// 4 internal identity check failed.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "apvar/runner.hpp"

using namespace apvar;

namespace {

struct CliState {
  RunConfig cfg;
  std::string config_path;
  std::string family = "";
};

void add_common(CLI::App* sub, CliState& st) {
  sub->add_option("--config", st.config_path, "flat key=value config file");
  sub->add_option("--family", st.family, "identity | power | subexp");
  sub->add_option("--c", st.cfg.c, "power-family exponent");
  sub->add_option("--gamma", st.cfg.gamma, "subexp-family exponent");
  sub->add_option("--x", st.cfg.x, "prime cutoff x");
  sub->add_option("--y", st.cfg.y, "window top (0: derive from B)");
  sub->add_option("--z", st.cfg.z, "custom window lower end");
  sub->add_option("--window", [&st](const std::vector<std::string>& v) {
    st.cfg.apply_kv("window", v.back());
    return true;
  }, "full | from-y1 | custom | theorem2");
  sub->add_option("--A", st.cfg.A, "error-exponent knob A");
  sub->add_option("--B", st.cfg.B, "window knob B");
  sub->add_option("--C1", st.cfg.C1, "theorem2 window knob");
  sub->add_option("--C5", st.cfg.C5, "major-arc knob (P = L^C5)");
  sub->add_option("--C6", st.cfg.C6, "major-arc knob (R = x L^-C6)");
  sub->add_option("--C7", st.cfg.C7, "dyadic-block knob");
  sub->add_option("--threads", st.cfg.threads, "worker threads (0 = auto)");
  sub->add_option("--grid-points", st.cfg.grid_points, "fit grid size");
  sub->add_option("--constants-cutoff", st.cfg.constants_cutoff,
                  "prime cutoff for the constants");
  sub->add_option("--seed", st.cfg.seed, "sampling seed");
  sub->add_flag("--strict", st.cfg.strict, "escalate knob warnings to errors");
  sub->add_option("--out", st.cfg.out_dir, "artifact directory");
}

RunConfig finalize(CliState& st, const CLI::App* sub) {
  RunConfig cfg;
  if (!st.config_path.empty()) cfg = RunConfig::parse_file(st.config_path);
  // flags override file values
  auto copy_if = [&](const std::string& flag, auto member) {
    if (sub->count(flag)) cfg.*member = st.cfg.*member;
  };
  if (sub->count("--family")) cfg.apply_kv("family", st.family);
  copy_if("--c", &RunConfig::c);
  copy_if("--gamma", &RunConfig::gamma);
  copy_if("--x", &RunConfig::x);
  copy_if("--y", &RunConfig::y);
  copy_if("--z", &RunConfig::z);
  if (sub->count("--window")) cfg.window = st.cfg.window;
  copy_if("--A", &RunConfig::A);
  copy_if("--B", &RunConfig::B);
  copy_if("--C1", &RunConfig::C1);
  copy_if("--C5", &RunConfig::C5);
  copy_if("--C6", &RunConfig::C6);
  copy_if("--C7", &RunConfig::C7);
  copy_if("--threads", &RunConfig::threads);
  copy_if("--grid-points", &RunConfig::grid_points);
  copy_if("--constants-cutoff", &RunConfig::constants_cutoff);
  copy_if("--seed", &RunConfig::seed);
  if (sub->count("--strict")) cfg.strict = st.cfg.strict;
  copy_if("--out", &RunConfig::out_dir);
  cfg.validate();
  return cfg;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"variance laboratory for primes in progressions with integer-part moduli"};
  app.require_subcommand(1);

  CliState st;
  auto* variance = app.add_subcommand("variance", "one windowed variance run");
  add_common(variance, st);
  auto* fitc = app.add_subcommand("fit-c", "fit V = a x f log f + b x f over a y grid");
  add_common(fitc, st);
  auto* constants = app.add_subcommand("constants", "emit the constants manifest");
  add_common(constants, st);
  auto* bdh = app.add_subcommand("bdh", "dyadic-block remainder decay report");
  add_common(bdh, st);
  std::vector<u64> bdh_xs{10000, 100000, 1000000};
  double q_over_x = 0.01;
  bdh->add_option("--x-grid", bdh_xs, "x values");
  bdh->add_option("--q-over-x", q_over_x, "fixed Q/x ratio");
  auto* equidist = app.add_subcommand("equidist", "residue counts of f(k) in a dyadic block");
  add_common(equidist, st);
  u64 eq_K = 10000, eq_K1 = 0, eq_qmax = 20;
  equidist->add_option("--K", eq_K, "block start");
  equidist->add_option("--K1", eq_K1, "block end (default 2K)");
  equidist->add_option("--q-max", eq_qmax, "largest modulus");
  auto* expsum = app.add_subcommand("expsum", "normalized exponential-sum decay sweep");
  add_common(expsum, st);
  int es_lo = 10, es_hi = 20, es_samples = 20;
  expsum->add_option("--log2-n-min", es_lo, "smallest dyadic exponent");
  expsum->add_option("--log2-n-max", es_hi, "largest dyadic exponent");
  expsum->add_option("--samples", es_samples, "beta samples per N");
  auto* m0 = app.add_subcommand("m0", "exact M0 against its reduced forms");
  add_common(m0, st);
  auto* thetah = app.add_subcommand("theta-h", "weighted quadratic sum vs expansion");
  add_common(thetah, st);
  double th_lo = 1e3, th_hi = 1e6;
  int th_pts = 25;
  thetah->add_option("--h-lo", th_lo, "grid start");
  thetah->add_option("--h-hi", th_hi, "grid end");
  thetah->add_option("--points", th_pts, "grid points");
  auto* plots = app.add_subcommand("plots", "emit gnuplot scripts for artifacts");
  std::string plots_dir = "out";
  plots->add_option("--dir", plots_dir, "artifact directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (variance->parsed()) {
      RunConfig cfg = finalize(st, variance);
      RunResult rr = run_variance(cfg);
      std::printf("x=%llu window=(%.6g, %.6g] f(y)=%llu n_moduli=%zu\n",
                  (unsigned long long)rr.breakdown.x, rr.breakdown.z,
                  rr.breakdown.y, (unsigned long long)rr.breakdown.f_y,
                  rr.breakdown.n_moduli);
      std::printf("Vprime      = %.10e\n", rr.breakdown.Vprime);
      std::printf("decomp      = %.10e  (rel gap %.3e)\n",
                  rr.breakdown.Vprime_decomp, rr.breakdown.identity_gap_rel);
      std::printf("main term   = %.10e  (C = %.12f)\n", rr.breakdown.main_term,
                  rr.C_ref);
      std::printf("residual    = %.10e\n", rr.breakdown.residual);
      std::printf("artifacts   : %s, %s, %s\n", rr.manifest_path.c_str(),
                  rr.ledger_path.c_str(), rr.breakdown_path.c_str());
    } else if (fitc->parsed()) {
      RunConfig cfg = finalize(st, fitc);
      FitReport rep = fit_C(cfg);
      std::printf("fit over %zu rows, f(y) in [%.4g, %.4g]\n", rep.rows.size(),
                  rep.grid_lo, rep.grid_hi);
      std::printf("a_hat = %.6f +- %.6f   (expect -> 1)\n", rep.fit.a,
                  rep.fit.a_err);
      std::printf("b_hat = %.6f +- %.6f   (reference C = %.6f +- %.2e)\n",
                  rep.fit.b, rep.fit.b_err, rep.C_ref, rep.C_ref_err);
      std::printf("artifacts: %s, %s\n", rep.csv_path.c_str(),
                  rep.json_path.c_str());
    } else if (constants->parsed()) {
      RunConfig cfg = finalize(st, constants);
      std::string path = write_constants_manifest(cfg);
      std::printf("constants manifest: %s\n", path.c_str());
    } else if (bdh->parsed()) {
      RunConfig cfg = finalize(st, bdh);
      BdhReport rep = bdh_report(cfg, bdh_xs, q_over_x);
      for (const BdhRow& r : rep.rows)
        std::printf("x=%-9llu Q=%-8llu |S_Q|=%-6zu %s ratio=%.6e weighted=%.6e\n",
                    (unsigned long long)r.x, (unsigned long long)r.Q,
                    r.set_size, r.skipped ? "(skipped: empty S_Q)" : "",
                    r.ratio, r.weighted_ratio);
      std::printf("ratio decreasing in x: %s; weighted decreasing: %s\n",
                  rep.ratio_decreasing ? "yes" : "NO",
                  rep.weighted_decreasing ? "yes" : "NO");
    } else if (equidist->parsed()) {
      RunConfig cfg = finalize(st, equidist);
      if (eq_K1 == 0) eq_K1 = 2 * eq_K;
      EquidistReport rep = equidist_report(cfg, eq_K, eq_K1, eq_qmax);
      std::printf("block (%llu, %llu], q <= %llu: max |count-expected|/expected = %.4f\n",
                  (unsigned long long)eq_K, (unsigned long long)eq_K1,
                  (unsigned long long)eq_qmax, rep.max_rel_dev);
      std::printf("table: %s\n", rep.csv_path.c_str());
    } else if (expsum->parsed()) {
      RunConfig cfg = finalize(st, expsum);
      ExpsumReport rep = expsum_sweep(cfg, es_lo, es_hi, es_samples);
      for (std::size_t i = 0; i < rep.N_grid.size(); ++i)
        std::printf("N=2^%-2zu median |S|/N = %.6e\n",
                    (std::size_t)(es_lo + (int)i), rep.medians[i]);
      std::printf("strictly decreasing: %s\n",
                  rep.strictly_decreasing ? "yes" : "NO");
    } else if (m0->parsed()) {
      RunConfig cfg = finalize(st, m0);
      M0Report rep = m0_report(cfg);
      for (const std::string& w : rep.strict_warnings)
        std::fprintf(stderr, "warning: %s\n", w.c_str());
      std::printf("M0 exact       = %.10e\n", rep.m0_exact);
      std::printf("h-sum form     = %.10e\n", rep.main_forms.h_sum_form);
      std::printf("theta form     = %.10e\n", rep.main_forms.theta_form);
      std::printf("forms gap      = %.6e\n", rep.main_forms.gap);
      std::printf("report: %s\n", rep.json_path.c_str());
    } else if (thetah->parsed()) {
      RunConfig cfg = finalize(st, thetah);
      ThetaHReport rep = theta_h_report(cfg, th_lo, th_hi, th_pts);
      std::printf("Gamma0 fit = %.9f (split-sample spread %.2e)\n",
                  rep.fit.Gamma0, rep.fit.spread);
      std::printf("max |resid|/sqrt(H) = %.4f, log-log slope = %.4f +- %.4f\n",
                  rep.fit.max_resid_norm, rep.fit.resid_slope,
                  rep.fit.resid_slope_err);
      std::printf("artifacts: %s, %s\n", rep.csv_path.c_str(),
                  rep.json_path.c_str());
    } else if (plots->parsed()) {
      auto written = emit_plots(plots_dir);
      for (const std::string& p : written) std::printf("wrote %s\n", p.c_str());
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const WindowError& e) {
    std::fprintf(stderr, "infeasible window: %s\n", e.what());
    return 3;
  } catch (const CheckError& e) {
    std::fprintf(stderr, "internal check failed: %s\n", e.what());
    return 4;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  }
  return 0;
}
