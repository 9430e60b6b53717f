#pragma once

#include <optional>
#include <string>
#include <vector>

#include "apvar/circle.hpp"
#include "apvar/config.hpp"
#include "apvar/constants.hpp"
#include "apvar/variance.hpp"

namespace apvar {

inline constexpr const char* APVAR_VERSION = "0.1.0";

// window lower edge for the configured policy
double resolve_window_start(const RunConfig& cfg, const ModuliFamily& fam);
// upper edge: explicit y, else the largest y with F(y) = x (log x)^{-B}
double resolve_window_top(const RunConfig& cfg, const ModuliFamily& fam);

struct RunResult {
  VarianceBreakdown breakdown;
  PhiFResult phi_check;
  double C_ref = 0.0;
  double elapsed_s = 0.0;
  std::string manifest_path, ledger_path, breakdown_path;
};

// variance run with persisted artifacts (manifest.json, ledger.csv,
// breakdown.json under cfg.out_dir); CSV/JSON bodies are byte-stable
// across reruns of the same config
RunResult run_variance(const RunConfig& cfg);

struct FitRow {
  u64 x = 0;
  double y = 0.0;
  u64 f_y = 0;
  double Vprime = 0.0;
  double main_term = 0.0;
  double residual = 0.0;
  double resid_norm = 0.0;     // residual / (x f(y))
  double half_power = 0.0;     // x^{1/2} f(y)^{3/2}
  double ratio_main = 0.0;     // Vprime / windowed main term
  double ratio_leading = 0.0;  // Vprime / (x f(y) log f(y)), reported only
};

struct FitCoeffs {
  double a = 0.0, b = 0.0;
  double a_err = 0.0, b_err = 0.0; // OLS standard errors
  std::size_t n = 0;
};

// least squares of V = a * x f log f + b * x f against windowed
// main-term predictors; rows are (t, u) pairs after normalization
FitCoeffs fit_linear2(const std::vector<double>& t, const std::vector<double>& u);

struct FitReport {
  std::vector<FitRow> rows;
  FitCoeffs fit;
  double C_ref = 0.0, C_ref_err = 0.0;
  double f_z = 0.0; // window lower-end modulus entering the predictors
  double grid_lo = 0.0, grid_hi = 0.0;
  std::string csv_path, json_path;
};

FitReport fit_C(const RunConfig& cfg);

struct BdhRow {
  u64 x = 0;
  u64 Q = 0;
  std::size_t set_size = 0;
  bool skipped = false;
  double lhs = 0.0;            // sum over q in S_Q of the coprime E^2 sum
  double ratio = 0.0;          // lhs / (|S_Q| x^2 / Q)
  double weighted_lhs = 0.0;   // with F'(k) weights
  double weighted_ratio = 0.0; // weighted_lhs / x^2
};

struct BdhReport {
  std::vector<BdhRow> rows;
  bool ratio_decreasing = true;
  bool weighted_decreasing = true;
  std::string csv_path;
};

// Dyadic-block remainder report across an x grid at fixed Q/x.
// The bound has unspecified constants, so this is a decay-trend report.
BdhReport bdh_report(const RunConfig& cfg, const std::vector<u64>& x_grid,
                     double q_over_x);

struct ExpsumRow {
  u64 N = 0;
  double beta = 0.0;
  double normalized = 0.0;
};

struct ExpsumReport {
  std::vector<ExpsumRow> rows;
  std::vector<u64> N_grid;
  std::vector<double> medians; // median |S|/N per dyadic N
  bool strictly_decreasing = true;
  std::string csv_path;
};

// beta sampled as rho / F'(N), rho log-uniform in [1/2, 8] (keeps the
// stationary-phase condition beta F'(N) >= 1/2 while beta < N)
ExpsumReport expsum_sweep(const RunConfig& cfg, int log2_N_min, int log2_N_max,
                          int samples_per_N);

struct EquidistReport {
  struct Row {
    u64 q = 0, l = 0, count = 0;
    double expected = 0.0, rel_dev = 0.0;
  };
  std::vector<Row> rows;
  double max_rel_dev = 0.0;
  std::string csv_path;
};

EquidistReport equidist_report(const RunConfig& cfg, u64 K, u64 K1, u64 q_max);

struct M0Report {
  double m0_exact = 0.0;
  M0Main main_forms;
  std::vector<std::pair<u64, double>> H_values; // (q, H(q)) for q <= min(P, 12)
  std::vector<std::string> strict_warnings;
  std::string json_path;
};

M0Report m0_report(const RunConfig& cfg);

struct ThetaHReport {
  Gamma0Fit fit;
  ConstantSet cs;
  std::string csv_path, json_path;
};

ThetaHReport theta_h_report(const RunConfig& cfg, double H_lo, double H_hi,
                            int points);

// constants manifest (values, cutoffs, error bounds) -> constants.json
std::string write_constants_manifest(const RunConfig& cfg);

// gnuplot-compatible scripts next to existing artifacts
std::vector<std::string> emit_plots(const std::string& artifacts_dir);

} // namespace apvar
