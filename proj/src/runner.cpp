#include "apvar/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include <json.hpp>

#include "apvar/parallel.hpp"

namespace apvar {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  out << body;
}

ordered_json config_json(const RunConfig& cfg) {
  ordered_json j;
  std::istringstream is(cfg.serialize());
  std::string line;
  while (std::getline(is, line)) {
    auto eq = line.find('=');
    if (eq != std::string::npos) j[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return j;
}

int effective_threads(const RunConfig& cfg) {
  return cfg.threads > 0 ? cfg.threads : default_threads();
}

} // namespace

double resolve_window_start(const RunConfig& cfg, const ModuliFamily& fam) {
  switch (cfg.window) {
    case WindowPolicy::full: return fam.y0;
    case WindowPolicy::from_y1: return y1_bound(fam, {cfg.x, cfg.A, cfg.B, cfg.C1});
    case WindowPolicy::custom: return cfg.z;
    case WindowPolicy::theorem2: return subexp_window_start(cfg.x, cfg.C1);
  }
  return fam.y0;
}

double resolve_window_top(const RunConfig& cfg, const ModuliFamily& fam) {
  if (cfg.y > 0.0) return cfg.y;
  double L = std::log((double)cfg.x);
  double target = (double)cfg.x * std::pow(L, -cfg.B);
  if (target < fam.F(fam.y0))
    throw WindowError("window infeasible: x (log x)^{-B} = " + fmt17(target) +
                      " is below F(y0) at x = " + std::to_string(cfg.x) +
                      ", B = " + fmt17(cfg.B));
  return fam.F_inverse(target);
}

RunResult run_variance(const RunConfig& cfg) {
  cfg.validate();
  auto t0 = std::chrono::steady_clock::now();
  ModuliFamily fam = cfg.make_family();
  double z = resolve_window_start(cfg, fam);
  double y = resolve_window_top(cfg, fam);
  if (y <= z)
    throw WindowError("window infeasible: lower end z = " + fmt17(z) +
                      " >= y = " + fmt17(y) + " at x = " + std::to_string(cfg.x) +
                      " with B = " + fmt17(cfg.B) +
                      " (raise x or lower B)");
  if (std::floor(y) - std::floor(z) < 10)
    std::cerr << "warning: window (" << z << ", " << y
              << "] holds fewer than 10 integers\n";

  ConstantSet cs = C_eval(std::max<u64>(cfg.constants_cutoff, 10000));
  PrimeTable pt = PrimeTable::build(cfg.x);
  int threads = effective_threads(cfg);
  VarianceBreakdown b = v_windowed(pt, fam, cfg.x, z, y, cs.C, threads);
  if (b.identity_gap_rel > 1e-6)
    throw CheckError("decomposition identity violated: relative gap " +
                     fmt17(b.identity_gap_rel));
  PhiFResult phis = phi_F(fam, std::max(z, fam.y0), y, cs.kappa);

  RunResult rr;
  rr.C_ref = cs.C;
  rr.phi_check = phis;

  fs::create_directories(cfg.out_dir);
  rr.ledger_path = cfg.out_dir + "/ledger.csv";
  rr.breakdown_path = cfg.out_dir + "/breakdown.json";
  rr.manifest_path = cfg.out_dir + "/manifest.json";

  std::ostringstream csv;
  csv << "k,f_k,F_prime,phi_f,inner_e2,inner_theta2,inner_theta,offdiag,diag_restricted\n";
  for (const ModulusInner& r : b.ledger)
    csv << r.k << ',' << r.fk << ',' << fmt17(r.Fp) << ',' << r.phi_fk << ','
        << fmt17(r.e2) << ',' << fmt17(r.theta2) << ',' << fmt17(r.theta1)
        << ',' << fmt17(r.offdiag) << ',' << fmt17(r.diag_restricted) << '\n';
  write_text(rr.ledger_path, csv.str());

  ordered_json bj;
  bj["x"] = b.x;
  bj["z"] = b.z;
  bj["y"] = b.y;
  bj["f_z"] = b.f_z;
  bj["f_y"] = b.f_y;
  bj["n_moduli"] = b.n_moduli;
  bj["S0"] = b.S0;
  bj["S1"] = b.S1;
  bj["S2"] = b.S2;
  bj["PhiF"] = b.PhiF;
  bj["Vprime"] = b.Vprime;
  bj["Vprime_decomp"] = b.Vprime_decomp;
  bj["identity_gap_rel"] = b.identity_gap_rel;
  bj["main_term"] = b.main_term;
  bj["residual"] = b.residual;
  bj["C_ref"] = cs.C;
  bj["kappa"] = cs.kappa;
  bj["s1_restricted"] = b.s1_restricted;
  bj["s1_unrestricted"] = b.s1_unrestricted;
  bj["s1_assembly_difference"] = b.s1_restricted - b.s1_unrestricted;
  bj["logsq_total"] = b.logsq_total;
  bj["PhiF_kappa_log"] = phis.kappa_log;
  bj["PhiF_gap"] = phis.gap;
  write_text(rr.breakdown_path, bj.dump(2) + "\n");

  auto t1 = std::chrono::steady_clock::now();
  rr.elapsed_s = std::chrono::duration<double>(t1 - t0).count();

  ordered_json mj;
  mj["version"] = APVAR_VERSION;
  mj["config"] = config_json(cfg);
  mj["threads"] = threads;
  mj["elapsed_s"] = rr.elapsed_s;
  mj["timestamp_unix"] =
      (long long)std::chrono::duration_cast<std::chrono::seconds>(
          std::chrono::system_clock::now().time_since_epoch())
          .count();
  write_text(rr.manifest_path, mj.dump(2) + "\n");

  rr.breakdown = std::move(b);
  return rr;
}

FitCoeffs fit_linear2(const std::vector<double>& t, const std::vector<double>& u) {
  if (t.size() != u.size() || t.size() < 3)
    throw ConfigError("fit: need at least 3 rows");
  double n = (double)t.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    sx += t[i];
    sy += u[i];
    sxx += t[i] * t[i];
    sxy += t[i] * u[i];
  }
  double denom = n * sxx - sx * sx;
  if (std::fabs(denom) < 1e-12 * n * sxx)
    throw ConfigError("fit: degenerate grid (predictor has no spread)");
  FitCoeffs fc;
  fc.n = t.size();
  fc.a = (n * sxy - sx * sy) / denom;
  fc.b = (sy - fc.a * sx) / n;
  double ssr = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    double e = u[i] - fc.a * t[i] - fc.b;
    ssr += e * e;
  }
  double s2 = ssr / std::max(1.0, n - 2.0);
  fc.a_err = std::sqrt(s2 * n / denom);
  fc.b_err = std::sqrt(s2 * sxx / denom);
  return fc;
}

FitReport fit_C(const RunConfig& cfg) {
  cfg.validate();
  ModuliFamily fam = cfg.make_family();
  ConstantSet cs = C_eval(std::max<u64>(cfg.constants_cutoff, 10000));
  double L = std::log((double)cfg.x);
  double f_hi = (double)cfg.x * std::pow(L, -cfg.B);
  // grid floor: the two-term main term is only multiplicatively meaningful
  // once log f exceeds |C| with margin (see README on the visible regime)
  double f_lo = std::max(std::pow((double)cfg.x, 0.3), std::exp(-cs.C + 2.0));
  double z = resolve_window_start(cfg, fam);
  double fz_min = fam.F(std::max(z, fam.y0));
  f_lo = std::max(f_lo, 2.0 * fz_min); // keep windows nondegenerate
  if (!(f_hi >= 10.0 * f_lo))
    throw ConfigError("fit: degenerate grid, f range [" + fmt17(f_lo) + ", " +
                      fmt17(f_hi) + "] spans less than a decade at x = " +
                      std::to_string(cfg.x));
  int n_pts = std::max(cfg.grid_points, 5);

  std::vector<double> y_grid;
  for (int i = 0; i < n_pts; ++i) {
    double f = f_lo * std::pow(f_hi / f_lo, (double)i / (double)(n_pts - 1));
    y_grid.push_back(fam.F_inverse(f));
  }
  std::sort(y_grid.begin(), y_grid.end());
  y_grid.erase(std::unique(y_grid.begin(), y_grid.end()), y_grid.end());
  if (y_grid.size() < 5) throw ConfigError("fit: fewer than 5 usable grid points");

  PrimeTable pt = PrimeTable::build(cfg.x);
  auto grid = variance_grid(pt, fam, cfg.x, z, y_grid, cs.C,
                            effective_threads(cfg));

  FitReport rep;
  rep.C_ref = cs.C;
  rep.C_ref_err = cs.C_err;
  rep.grid_lo = f_lo;
  rep.grid_hi = f_hi;
  double fz = (double)grid.front().f_z;
  double lfz = fz >= 2.0 ? std::log(fz) : 0.0;
  double main_z = (double)cfg.x * fz * (lfz + cs.C); // subtracted window share
  if (cfg.window == WindowPolicy::full) main_z = 0.0; // below y0 nothing removed
  rep.f_z = fz;

  std::vector<double> T, U;
  for (const auto& b : grid) {
    if (b.identity_gap_rel > 1e-6)
      throw CheckError("fit: decomposition identity failed on a row, gap " +
                       fmt17(b.identity_gap_rel));
    FitRow row;
    row.x = cfg.x;
    row.y = b.y;
    row.f_y = b.f_y;
    row.Vprime = b.Vprime;
    row.main_term = b.main_term;
    row.residual = b.Vprime - (b.main_term - main_z);
    row.resid_norm = row.residual / ((double)cfg.x * (double)b.f_y);
    row.half_power = std::sqrt((double)cfg.x) * std::pow((double)b.f_y, 1.5);
    row.ratio_main = b.Vprime / (b.main_term - main_z);
    row.ratio_leading =
        b.Vprime / ((double)cfg.x * (double)b.f_y * std::log((double)b.f_y));
    rep.rows.push_back(row);
    double fy = (double)b.f_y;
    double dt = fy * std::log(fy) - fz * lfz;
    double du = fy - fz;
    T.push_back(dt / du);
    U.push_back(b.Vprime / ((double)cfg.x * du));
  }
  rep.fit = fit_linear2(T, U);

  fs::create_directories(cfg.out_dir);
  rep.csv_path = cfg.out_dir + "/fit.csv";
  rep.json_path = cfg.out_dir + "/fit.json";
  std::ostringstream csv;
  csv << "x,y,f_y,Vprime,main_term,residual,resid_norm,half_power,ratio_main,"
         "ratio_leading\n";
  for (const FitRow& r : rep.rows)
    csv << r.x << ',' << fmt17(r.y) << ',' << r.f_y << ',' << fmt17(r.Vprime)
        << ',' << fmt17(r.main_term) << ',' << fmt17(r.residual) << ','
        << fmt17(r.resid_norm) << ',' << fmt17(r.half_power) << ','
        << fmt17(r.ratio_main) << ',' << fmt17(r.ratio_leading) << '\n';
  write_text(rep.csv_path, csv.str());

  ordered_json j;
  j["family"] = family_name(cfg.family);
  j["x"] = cfg.x;
  j["a_hat"] = rep.fit.a;
  j["a_err"] = rep.fit.a_err;
  j["b_hat"] = rep.fit.b;
  j["b_err"] = rep.fit.b_err;
  j["C_ref"] = rep.C_ref;
  j["C_ref_err"] = rep.C_ref_err;
  j["b_minus_C"] = rep.fit.b - rep.C_ref;
  j["grid_f_lo"] = rep.grid_lo;
  j["grid_f_hi"] = rep.grid_hi;
  j["rows"] = rep.rows.size();
  write_text(rep.json_path, j.dump(2) + "\n");
  return rep;
}

BdhReport bdh_report(const RunConfig& cfg, const std::vector<u64>& x_grid,
                     double q_over_x) {
  cfg.validate();
  ModuliFamily fam = cfg.make_family();
  BdhReport rep;
  int threads = effective_threads(cfg);
  for (u64 x : x_grid) {
    BdhRow row;
    row.x = x;
    row.Q = (u64)std::llround((double)x * q_over_x);
    double L = std::log((double)x);
    // the dyadic-block bound is stated for Q below the window boundary;
    // larger blocks are still well-defined sums, so this only warns
    if ((double)row.Q > (double)x * std::pow(L, -cfg.B) + 0.5)
      std::cerr << "warning: bdh block Q = " << row.Q
                << " lies above x (log x)^{-B}; outside the bound's regime\n";
    DyadicSet sq = dyadic_set(fam, row.Q);
    row.set_size = sq.members.size();
    if (sq.members.empty()) {
      row.skipped = true;
      rep.rows.push_back(row);
      continue;
    }
    PrimeTable pt = PrimeTable::build(x);
    std::vector<double> plain(sq.members.size()), weighted(sq.members.size());
    parallel_for(sq.members.size(), threads, [&](std::size_t i) {
      auto [k, q] = sq.members[i];
      double inner = inner_variance(pt, x, q);
      plain[i] = inner;
      weighted[i] = fam.Fprime((double)k) * inner;
    });
    Kahan lhs, wlhs;
    for (double v : plain) lhs.add(v);
    for (double v : weighted) wlhs.add(v);
    row.lhs = lhs.value();
    row.weighted_lhs = wlhs.value();
    double xd = (double)x;
    row.ratio = row.lhs / ((double)row.set_size * xd * xd / (double)row.Q);
    row.weighted_ratio = row.weighted_lhs / (xd * xd);
    rep.rows.push_back(row);
  }
  for (std::size_t i = 1; i < rep.rows.size(); ++i) {
    if (rep.rows[i].skipped || rep.rows[i - 1].skipped) continue;
    if (rep.rows[i].ratio >= rep.rows[i - 1].ratio) rep.ratio_decreasing = false;
    if (rep.rows[i].weighted_ratio >= rep.rows[i - 1].weighted_ratio)
      rep.weighted_decreasing = false;
  }
  fs::create_directories(cfg.out_dir);
  rep.csv_path = cfg.out_dir + "/bdh.csv";
  std::ostringstream csv;
  csv << "x,Q,set_size,skipped,lhs,ratio,weighted_lhs,weighted_ratio\n";
  for (const BdhRow& r : rep.rows)
    csv << r.x << ',' << r.Q << ',' << r.set_size << ',' << (r.skipped ? 1 : 0)
        << ',' << fmt17(r.lhs) << ',' << fmt17(r.ratio) << ','
        << fmt17(r.weighted_lhs) << ',' << fmt17(r.weighted_ratio) << '\n';
  write_text(rep.csv_path, csv.str());
  return rep;
}

ExpsumReport expsum_sweep(const RunConfig& cfg, int log2_N_min, int log2_N_max,
                          int samples_per_N) {
  cfg.validate();
  ModuliFamily fam = cfg.make_family();
  ExpsumReport rep;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int e = log2_N_min; e <= log2_N_max; ++e) {
    u64 N = u64(1) << e;
    double Fp = fam.Fprime((double)N);
    std::vector<double> norms;
    for (int s = 0; s < samples_per_N; ++s) {
      double rho = 0.5 * std::pow(16.0, unif(rng)); // log-uniform in [1/2, 8]
      double beta = rho / Fp;
      ExpSumSample samp = expsum_single(fam, N, 2 * N, beta);
      rep.rows.push_back({N, beta, samp.normalized});
      norms.push_back(samp.normalized);
    }
    std::sort(norms.begin(), norms.end());
    double med = norms.size() % 2 == 1
                     ? norms[norms.size() / 2]
                     : 0.5 * (norms[norms.size() / 2 - 1] + norms[norms.size() / 2]);
    rep.N_grid.push_back(N);
    rep.medians.push_back(med);
  }
  for (std::size_t i = 1; i < rep.medians.size(); ++i)
    if (rep.medians[i] >= rep.medians[i - 1]) rep.strictly_decreasing = false;
  fs::create_directories(cfg.out_dir);
  rep.csv_path = cfg.out_dir + "/expsum.csv";
  std::ostringstream csv;
  csv << "N,beta,normalized\n";
  for (const ExpsumRow& r : rep.rows)
    csv << r.N << ',' << fmt17(r.beta) << ',' << fmt17(r.normalized) << '\n';
  write_text(rep.csv_path, csv.str());
  return rep;
}

EquidistReport equidist_report(const RunConfig& cfg, u64 K, u64 K1, u64 q_max) {
  cfg.validate();
  if (!(K < K1 && K1 <= 2 * K))
    throw ConfigError("equidist: need K < K1 <= 2K");
  ModuliFamily fam = cfg.make_family();
  EquidistReport rep;
  // one pass over the block; count every modulus from the same f values
  std::vector<u64> fv;
  fv.reserve((std::size_t)(K1 - K));
  for (u64 k = K + 1; k <= K1; ++k) fv.push_back(fam.f(k));
  std::vector<u64> counts;
  for (u64 q = 1; q <= q_max; ++q) {
    counts.assign((std::size_t)q, 0);
    for (u64 f : fv) ++counts[(std::size_t)(f % q)];
    double expected = (double)(K1 - K) / (double)q;
    for (u64 l = 0; l < q; ++l) {
      double dev = std::fabs((double)counts[(std::size_t)l] - expected) / expected;
      rep.rows.push_back({q, l, counts[(std::size_t)l], expected, dev});
      rep.max_rel_dev = std::max(rep.max_rel_dev, dev);
    }
  }
  fs::create_directories(cfg.out_dir);
  rep.csv_path = cfg.out_dir + "/equidist.csv";
  std::ostringstream csv;
  csv << "q,l,count,expected,rel_dev\n";
  for (const auto& r : rep.rows)
    csv << r.q << ',' << r.l << ',' << r.count << ',' << fmt17(r.expected)
        << ',' << fmt17(r.rel_dev) << '\n';
  write_text(rep.csv_path, csv.str());
  return rep;
}

M0Report m0_report(const RunConfig& cfg) {
  cfg.validate();
  ModuliFamily fam = cfg.make_family();
  M0Report rep;
  ArcParams arcs =
      ArcParams::from_knobs(cfg.x, cfg.C5, cfg.C6, cfg.C7, cfg.A, cfg.B);
  rep.strict_warnings = arcs.strict_violations();
  if (cfg.strict && !rep.strict_warnings.empty())
    throw ConfigError("strict mode: " + rep.strict_warnings.front());
  double y1 = y1_bound(fam, {cfg.x, cfg.A, cfg.B, cfg.C1});
  double y;
  if (cfg.y > 0.0) {
    y = cfg.y;
  } else {
    // default top half a log-power above y1 so the window is nonempty
    double L = std::log((double)cfg.x);
    y = fam.F_inverse((double)cfg.x * std::pow(L, -0.5 * cfg.B));
  }
  if (y <= y1)
    throw WindowError("m0: empty window, y1 >= y at x = " + std::to_string(cfg.x) +
                      ", B = " + fmt17(cfg.B));
  u64 hmax_table = (u64)((double)cfg.x / std::floor(fam.F(y1))) + 2;
  ArithTables at = ArithTables::build(
      std::max<u64>({(u64)std::llround(arcs.P) + 1, hmax_table, 1000}));
  rep.m0_exact = M0_exact(at, fam, y1, y, cfg.x, arcs);
  rep.main_forms = M0_main_term(at, fam, cfg.x, y1, y);
  for (u64 q = 1; q <= std::min<u64>((u64)arcs.P, 12); ++q)
    rep.H_values.emplace_back(q, H_of_q(at, fam, y1, y, cfg.x, q));

  fs::create_directories(cfg.out_dir);
  rep.json_path = cfg.out_dir + "/m0.json";
  ordered_json j;
  j["x"] = cfg.x;
  j["y1"] = y1;
  j["y"] = y;
  j["P"] = arcs.P;
  j["m0_exact"] = rep.m0_exact;
  j["m0_h_sum_form"] = rep.main_forms.h_sum_form;
  j["m0_theta_form"] = rep.main_forms.theta_form;
  j["form_gap"] = rep.main_forms.gap;
  j["exact_vs_h_sum_rel"] =
      (rep.m0_exact - rep.main_forms.h_sum_form) /
      std::max(std::fabs(rep.m0_exact), 1e-300);
  ordered_json hq = ordered_json::array();
  for (auto& [q, v] : rep.H_values) {
    ordered_json e;
    e["q"] = q;
    e["H"] = v;
    hq.push_back(e);
  }
  j["H_of_q"] = hq;
  j["strict_warnings"] = rep.strict_warnings;
  write_text(rep.json_path, j.dump(2) + "\n");
  return rep;
}

ThetaHReport theta_h_report(const RunConfig& cfg, double H_lo, double H_hi,
                            int points) {
  cfg.validate();
  ThetaHReport rep;
  rep.cs = C_eval(std::max<u64>(cfg.constants_cutoff, 10000));
  ArithTables at = ArithTables::build((u64)H_hi + 2);
  std::vector<double> grid;
  for (int i = 0; i < points; ++i)
    grid.push_back(H_lo * std::pow(H_hi / H_lo, (double)i / (double)(points - 1)));
  rep.fit = gamma0_fit(grid, rep.cs, at);

  fs::create_directories(cfg.out_dir);
  rep.csv_path = cfg.out_dir + "/theta_h.csv";
  rep.json_path = cfg.out_dir + "/theta_h.json";
  std::ostringstream csv;
  csv << "H,theta_exact,theta_expansion,resid_norm\n";
  for (std::size_t i = 0; i < rep.fit.H_grid.size(); ++i) {
    double H = rep.fit.H_grid[i];
    double ex = theta_H_exact(H, at);
    double ap = theta_H_expansion(H, rep.cs, rep.fit.Gamma0);
    csv << fmt17(H) << ',' << fmt17(ex) << ',' << fmt17(ap) << ','
        << fmt17(rep.fit.resid_norm[i]) << '\n';
  }
  write_text(rep.csv_path, csv.str());
  ordered_json j;
  j["Gamma0_fit"] = rep.fit.Gamma0;
  j["split_sample_spread"] = rep.fit.spread;
  j["max_resid_norm"] = rep.fit.max_resid_norm;
  j["resid_slope"] = rep.fit.resid_slope;
  j["resid_slope_err"] = rep.fit.resid_slope_err;
  j["kappa"] = rep.cs.kappa;
  j["Gamma_minus1"] = rep.cs.Gamma_minus1;
  write_text(rep.json_path, j.dump(2) + "\n");
  return rep;
}

std::string write_constants_manifest(const RunConfig& cfg) {
  cfg.validate();
  u64 cut = std::max<u64>(cfg.constants_cutoff, 10000);
  ConstantSet cs = C_eval(cut);
  KappaResult kr = kappa_eval(std::min<u64>(cut, 1000000));
  ValueWithError e2m1 = E2_eval(-1.0, std::min<u64>(cut, 1000000));

  fs::create_directories(cfg.out_dir);
  std::string path = cfg.out_dir + "/constants.json";
  ordered_json j;
  j["cutoff"] = cut;
  j["kappa"] = ordered_json{{"value", cs.kappa},
                            {"err", cs.kappa_err},
                            {"product", kr.product},
                            {"product_bracket", kr.err_naive},
                            {"cross_check_zeta", kr.cross_check}};
  j["prime_log_sum"] =
      ordered_json{{"value", cs.prime_log_sum}, {"err", cs.prime_log_sum_err}};
  j["E2_at_minus1"] = ordered_json{{"value", e2m1.value}, {"err", e2m1.err}};
  j["gamma0"] = cs.gamma0;
  j["zeta0"] = cs.zeta0;
  j["zeta_prime0"] = cs.zeta_prime0;
  j["Gamma_minus1"] =
      ordered_json{{"value", cs.Gamma_minus1}, {"err", cs.Gamma_minus1_err}};
  j["C"] = ordered_json{{"value", cs.C},
                        {"err", cs.C_err},
                        {"direct_form", cs.C_direct},
                        {"identity_gap", cs.C - cs.C_direct}};
  write_text(path, j.dump(2) + "\n");
  return path;
}

std::vector<std::string> emit_plots(const std::string& artifacts_dir) {
  std::vector<std::string> written;
  auto have = [&](const std::string& name) {
    return fs::exists(fs::path(artifacts_dir) / name);
  };
  auto count_rows = [&](const std::string& name) -> long {
    std::ifstream in(fs::path(artifacts_dir) / name);
    long n = -1;
    std::string line;
    while (std::getline(in, line))
      if (!line.empty()) ++n;
    return n < 0 ? 0 : n;
  };
  bool any = false;

  if (have("ledger.csv") || have("fit.csv")) {
    any = true;
    std::ostringstream gp;
    gp << "# residual and per-modulus structure\n"
       << "set datafile separator ','\n"
       << "set key autotitle columnhead\n"
       << "set logscale x\n";
    if (have("fit.csv")) {
      if (count_rows("fit.csv") == 0)
        gp << "# fit.csv has a header but no rows; nothing to plot\n";
      else
        gp << "set xlabel 'f(y)'\nset ylabel 'residual/(x f(y))'\n"
           << "plot 'fit.csv' using 'f_y':'resid_norm' with linespoints\n";
    } else {
      if (count_rows("ledger.csv") == 0)
        gp << "# ledger.csv has a header but no rows; nothing to plot\n";
      else
        gp << "set xlabel 'f(k)'\nset ylabel 'inner E^2 sum'\n"
           << "plot 'ledger.csv' using 'f_k':'inner_e2' with points\n";
    }
    std::string p = artifacts_dir + "/residual_plot.gp";
    write_text(p, gp.str());
    written.push_back(p);
  }
  if (have("expsum.csv")) {
    any = true;
    std::ostringstream gp;
    gp << "# normalized exponential-sum decay across dyadic N\n"
       << "set datafile separator ','\nset key autotitle columnhead\n"
       << "set logscale xy\nset xlabel 'N'\nset ylabel '|S|/N'\n";
    if (count_rows("expsum.csv") == 0)
      gp << "# expsum.csv has a header but no rows; nothing to plot\n";
    else
      gp << "plot 'expsum.csv' using 'N':'normalized' with points\n";
    std::string p = artifacts_dir + "/expsum_decay.gp";
    write_text(p, gp.str());
    written.push_back(p);
  }
  if (have("equidist.csv")) {
    any = true;
    std::ostringstream gp;
    gp << "# equidistribution discrepancy per (q, l)\n"
       << "set datafile separator ','\nset key autotitle columnhead\n"
       << "set xlabel 'q'\nset ylabel '|count - expected|/expected'\n";
    if (count_rows("equidist.csv") == 0)
      gp << "# equidist.csv has a header but no rows; nothing to plot\n";
    else
      gp << "plot 'equidist.csv' using 'q':'rel_dev' with points\n";
    std::string p = artifacts_dir + "/equidist_disc.gp";
    write_text(p, gp.str());
    written.push_back(p);
  }
  if (!any)
    throw ConfigError("plots: no artifacts found in " + artifacts_dir +
                      " (expected ledger.csv, fit.csv, expsum.csv or equidist.csv)");
  return written;
}

} // namespace apvar
