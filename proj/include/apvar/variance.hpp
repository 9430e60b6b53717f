#pragma once

#include <cstdint>
#include <vector>

#include "apvar/arith.hpp"
#include "apvar/moduli.hpp"
#include "apvar/sieve.hpp"

namespace apvar {

// Per-modulus quantities from one pass over the prime table.
// e2 is the direct sum of squared remainders over coprime classes;
// theta2/theta1 are the corresponding moments, kept separate so the
// decomposition identity is checked across two assembly routes.
struct ModulusInner {
  u64 k = 0;
  u64 fk = 0;
  double Fp = 0.0;     // F'(k)
  u64 phi_fk = 0;
  double e2 = 0.0;     // sum over coprime l of (theta(x;fk,l) - x/phi)^2
  double theta2 = 0.0; // sum over coprime l of theta^2 (direct squares)
  double theta1 = 0.0; // sum over coprime l of theta
  double offdiag = 0.0;          // sum_{p1<p2<=x, p1=p2 mod fk} log p1 log p2
  double diag_restricted = 0.0;  // sum_{p<=x, p not dividing fk} (log p)^2
};

struct VarianceBreakdown {
  u64 x = 0;
  double z = 0.0, y = 0.0; // window (z, y]
  u64 f_z = 0, f_y = 0;
  double S0 = 0.0, S1 = 0.0, S2 = 0.0, PhiF = 0.0;
  double Vprime = 0.0;        // direct route: sum F'(k) e2(k)
  double Vprime_decomp = 0.0; // S1 - 2x S2 + x^2 PhiF
  double identity_gap_rel = 0.0;
  double main_term = 0.0;
  double residual = 0.0;
  // S1 again via the off-diagonal rewriting: the restricted-diagonal
  // assembly is exact, the unrestricted one replaces the weighted diagonal
  // by f(y) sum (log p)^2; both are reported, the difference is not chosen
  double s1_restricted = 0.0;   // sum F' (diag_restricted + 2 offdiag)
  double s1_unrestricted = 0.0; // 2 S0 + f(y) sum (log p)^2
  double logsq_total = 0.0; // sum over p <= x of (log p)^2
  std::size_t n_moduli = 0;
  std::vector<ModulusInner> ledger; // filled only when n_moduli <= ledger cap
};

// Direct sum of squared remainders for a single modulus.
// Memory O(m); moduli above the budget take a chunked multi-pass route.
double inner_variance(const PrimeTable& pt, u64 x, u64 m,
                      std::size_t mem_budget_bytes = std::size_t(1) << 30);

// Off-diagonal prime-pair sum per modulus, residue-class method.
double off_diagonal(const PrimeTable& pt, u64 x, u64 m);

// FFT cross-check route: lag autocorrelation of the log-weighted prime
// indicator; one transform answers every modulus via lag bucketing.
std::vector<double> prime_lag_autocorr(const PrimeTable& pt, u64 x);
double off_diagonal_from_lags(const std::vector<double>& lags, u64 m);

// Phi_F(z, y) = sum_{z < k <= y} F'(k)/phi(f(k)), plus the singular-series
// comparison value kappa * log(f(y)/f(z)) and their gap.
struct PhiFResult {
  double direct = 0.0;
  double kappa_log = 0.0;
  double gap = 0.0;
};
PhiFResult phi_F(const ModuliFamily& fam, double z, double y, double kappa);

// x f(y) log f(y) + C x f(y); below-domain flag when f(y) < 2
struct MainTerm {
  double value = 0.0;
  bool below_domain = false;
};
MainTerm main_term(const ModuliFamily& fam, u64 x, double y, double C);

// Windowed variance with full breakdown over k in (z, y].
// Requires F(y) <= x.  Deterministic for any thread count.
VarianceBreakdown v_windowed(const PrimeTable& pt, const ModuliFamily& fam,
                             u64 x, double z, double y, double C_main,
                             int threads, std::size_t ledger_cap = 10000);

// Full variance over (y0, y]
VarianceBreakdown v_full(const PrimeTable& pt, const ModuliFamily& fam,
                         u64 x, double y, double C_main, int threads,
                         std::size_t ledger_cap = 10000);

// One pass over (z, y_max], snapshotting the breakdown at each grid y.
// Grid must be ascending; every snapshot satisfies the decomposition
// identity independently.
std::vector<VarianceBreakdown> variance_grid(const PrimeTable& pt,
                                             const ModuliFamily& fam, u64 x,
                                             double z,
                                             const std::vector<double>& y_grid,
                                             double C_main, int threads);

// Closed-form comparison for 2 S0 against the weighted quadratic sum
// Theta evaluated at the window ends (asymptotic: the gap is reported).
struct S0Check {
  double lhs = 0.0; // 2 S0 from the off-diagonal route
  double rhs = 0.0; // f(y1)^2 Theta(x/f(y1)) - f(y)^2 Theta(x/f(y))
  double rel_gap = 0.0;
};
S0Check s0_closed_form_check(const PrimeTable& pt, const ModuliFamily& fam,
                             const ArithTables& at, u64 x, double y1, double y,
                             int threads);

} // namespace apvar
