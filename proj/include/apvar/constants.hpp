#pragma once

#include <cstdint>
#include <vector>

#include "apvar/arith.hpp"
#include "apvar/dd.hpp"
#include "apvar/sieve.hpp"

namespace apvar {

// Riemann zeta at integer s >= 2, Euler-Maclaurin, ~30 digits.
dd zeta_dd(int s);

// prime zeta P(s) = sum over primes of p^{-s}, s >= 2 integer,
// via the Moebius-zeta series.
dd prime_zeta_dd(int s);

struct KappaResult {
  double product = 0.0;     // bare Euler product over p <= cutoff
  double value = 0.0;       // product times exactly-evaluated tail factor
  double err = 0.0;         // bound on |value - limit|
  double err_naive = 0.0;   // width of the bare-product bracket (integral bound)
  double cross_check = 0.0; // zeta(2) zeta(3) / zeta(6)
};

// kappa = prod_p (1 + 1/(p(p-1))) = sum mu(n)^2/(n phi(n)).
// The tail factor over p > cutoff is evaluated through prime-zeta values,
// so `value` carries ~13 correct digits already at cutoff 1e3.
KappaResult kappa_eval(u64 prime_cutoff);

// direct partial series sum_{n<=N} mu(n)^2/(n phi(n))  (a lower bound)
double kappa_series(const ArithTables& at, u64 n_cutoff);

struct ValueWithError {
  double value = 0.0;
  double err = 0.0;
};

// E2(s) = prod_p (1 + p^{-s}/(p^2(p-1)) - p^{-2s}/(p^3(p-1))), Re s > -3/2.
// Each factor is combined as 1 + p^{-(s+2)}(1 - p^{-(s+1)})/(p-1), which
// vanishes identically at s = -1 (so E2(-1) = 1 with a zero tail bound).
ValueWithError E2_eval(double s, u64 prime_cutoff);

// E2'(-1) = sum_p log p / (p(p-1)), truncated prime sum with an
// integral-comparison tail bound.
ValueWithError E2_prime_at_minus1(u64 prime_cutoff);

struct ConstantSet {
  double kappa = 0.0, kappa_err = 0.0;
  double prime_log_sum = 0.0, prime_log_sum_err = 0.0;
  double gamma0 = 0.0;      // Euler's constant
  double zeta0 = 0.0;       // zeta(0) = -1/2
  double zeta_prime0 = 0.0; // zeta'(0) = -log(2 pi)/2
  double Gamma_minus1 = 0.0, Gamma_minus1_err = 0.0;
  double C = 0.0, C_err = 0.0; // from the Gamma_minus1 route
  double C_direct = 0.0;       // closed form, internal identity partner
  double Gamma0_fit = 0.0, Gamma0_fit_err = 0.0; // filled by gamma0_fit
  u64 cutoff = 0;
};

ConstantSet C_eval(u64 prime_cutoff);

// Theta(H) = sum_{h<=H} (W(h)/h)(H-h)^2 with W(h) = h/phi(h)
double theta_H_exact(double H, const ArithTables& at);

// 4-term asymptotic kappa H^2 log H + 2 Gamma0 H^2 + H log H + 2 Gamma_{-1} H
double theta_H_expansion(double H, const ConstantSet& cs, double Gamma0);

struct Gamma0Fit {
  double Gamma0 = 0.0;
  double spread = 0.0;          // split-sample |difference| of the fit
  double max_resid_norm = 0.0;  // max |exact - expansion| / sqrt(H)
  double resid_slope = 0.0;     // log-log slope of the normalized residual
  double resid_slope_err = 0.0; // OLS standard error of that slope
  std::vector<double> H_grid;
  std::vector<double> resid_norm;
};

// Extract 2 Gamma0 by least squares of (exact - known terms)/H^2 against
// a constant over the grid.  Refuses grids narrower than two decades or
// reaching below H = 100.
Gamma0Fit gamma0_fit(const std::vector<double>& H_grid, const ConstantSet& cs,
                     const ArithTables& at);

} // namespace apvar
