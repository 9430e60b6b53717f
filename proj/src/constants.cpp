#include "apvar/constants.hpp"

#include <cmath>
#include <stdexcept>

#include "apvar/kahan.hpp"

namespace apvar {

namespace {

// Euler's constant, 30 significant digits (standard value; the expansion
// coefficient gamma_0 of zeta(s+2)/(s+1) near s = -1).
constexpr dd GAMMA0{0.5772156649015329, -4.942915152430645e-18};
// log(2 pi)
constexpr dd LOG_2PI{1.8378770664093456, -7.756588316134483e-17};

// Bernoulli numbers B_2, B_4, ..., B_16 for the Euler-Maclaurin tail
constexpr double BERN[8] = {1.0 / 6.0,  -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0,
                            5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0,
                            -3617.0 / 510.0};

dd dd_from_u64(u64 a) {
  double hi = (double)a;
  long long diff = (long long)a - (long long)hi; // exact for a < 2^62
  return detail::quick_two_sum(hi, (double)diff);
}

} // namespace

dd zeta_dd(int s) {
  if (s < 2) throw std::domain_error("zeta_dd: s must be >= 2");
  if (s > 180) return dd(1.0); // 1 + 2^{-s} is below dd resolution
  const int N = 64;
  dd sum(0.0);
  for (int n = 1; n <= N; ++n) sum = dd_add(sum, dd_powi(dd_div(1.0, (double)n), s));
  dd Ninv = dd_div(1.0, (double)N);
  sum = dd_add(sum, dd_div(dd_powi(Ninv, s - 1), dd((double)(s - 1))));
  sum = dd_sub(sum, dd_mul(dd_powi(Ninv, s), 0.5));
  // Euler-Maclaurin: B_{2j}/(2j)! * s(s+1)...(s+2j-2) * N^{-(s+2j-1)}
  dd rising((double)s);
  double factorial = 2.0;
  for (int j = 1; j <= 8; ++j) {
    dd term = dd_mul(dd_mul(dd(BERN[j - 1] / factorial), rising),
                     dd_powi(Ninv, s + 2 * j - 1));
    sum = dd_add(sum, term);
    if (std::fabs(term.hi) < 1e-36 * std::fabs(sum.hi)) break;
    rising = dd_mul(rising,
                    dd_mul(dd((double)(s + 2 * j - 1)), (double)(s + 2 * j)));
    factorial *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
  }
  return sum;
}

dd prime_zeta_dd(int s) {
  if (s < 2) throw std::domain_error("prime_zeta_dd: s must be >= 2");
  // P(s) = sum_k mu(k)/k log zeta(ks)
  dd tot(0.0);
  for (int k = 1; k * s <= 200; ++k) {
    static const int MU[] = {0, 1,  -1, -1, 0, -1, 1, -1, 0,  0, 1,
                             -1, 0,  -1, 1,  1, 0,  -1, 0, -1, 0, 1,
                             1,  -1, 0,  0,  1, 0,  0,  -1};
    if (k >= 30) break;
    int mu = MU[k];
    if (mu == 0) continue;
    dd lz = dd_log(zeta_dd(k * s));
    tot = dd_add(tot, dd_mul(lz, (double)mu / (double)k));
    if (std::fabs(lz.hi) < 1e-38) break;
  }
  return tot;
}

KappaResult kappa_eval(u64 prime_cutoff) {
  if (prime_cutoff < 2)
    throw std::domain_error("kappa_eval: cutoff must be >= 2 (>= 1e3 for tight bounds)");
  KappaResult r;

  // power-series coefficients of log(1 + sum_{i>=2} t^i) up to t^J
  constexpr int J = 16;
  double u[J + 1] = {0};
  for (int i = 2; i <= J; ++i) u[i] = 1.0;
  double lg[J + 1] = {0}; // log(1+u) = u - u^2/2 + u^3/3 - ...
  {
    double upow[J + 1];
    for (int i = 0; i <= J; ++i) upow[i] = u[i];
    double sign = 1.0;
    for (int n = 1; n <= J / 2 + 1; ++n) {
      if (n > 1) {
        // upow <- upow * u  (truncated at degree J)
        double nx[J + 1] = {0};
        for (int a = 2; a <= J; ++a)
          for (int b = 2; a + b <= J; ++b) nx[a + b] += upow[a] * u[b];
        for (int i = 0; i <= J; ++i) upow[i] = nx[i];
      }
      for (int i = 0; i <= J; ++i) lg[i] += sign / (double)n * upow[i];
      sign = -sign;
    }
  }

  // finite product over p <= cutoff, and partial prime powers sum_{p<=X} p^{-j}
  dd prod(1.0);
  dd partial[J + 1];
  segmented_sieve(prime_cutoff, [&](u64 p) {
    u64 pp = p * (p - 1);
    prod = dd_mul(prod, dd_add(dd_div(dd(1.0), dd_from_u64(pp)), 1.0));
    dd inv = dd_div(dd(1.0), dd_from_u64(p));
    dd v = dd_sqr(inv);
    for (int j = 2; j <= J; ++j) {
      partial[j] = dd_add(partial[j], v);
      if (std::fabs(v.hi) < 1e-38) break;
      v = dd_mul(v, inv);
    }
  });
  r.product = (double)prod;

  // tail factor: log T = sum_j lg[j] (P(j) - sum_{p<=X} p^{-j})
  dd logT(0.0);
  for (int j = 2; j <= J; ++j) {
    if (lg[j] == 0.0) continue;
    dd tail_j = dd_sub(prime_zeta_dd(j), partial[j]);
    logT = dd_add(logT, dd_mul(tail_j, lg[j]));
  }
  dd value = dd_mul(prod, dd_exp(logT));
  r.value = (double)value;

  // remainder of the truncated coefficient series: |lg_j| <= 5/j <= 1.76^j,
  // so sum_{p>X, j>J} |lg_j| p^{-j} <= 3 c^{J+1} X^{-J} / J with c = 1.76
  double X = (double)prime_cutoff;
  double rem = 3.0 * std::pow(1.76, J + 1) * std::pow(X, -(double)J) / (double)J;
  r.err = rem * r.value + 1e-13 * r.value;

  // bare-product bracket from the all-integers comparison sum_{n>X} 2/n^2
  r.err_naive = r.product * std::expm1(2.0 / X);

  r.cross_check = (double)dd_div(dd_mul(zeta_dd(2), zeta_dd(3)), zeta_dd(6));
  return r;
}

double kappa_series(const ArithTables& at, u64 n_cutoff) {
  if (n_cutoff > at.limit) throw std::domain_error("kappa_series: cutoff beyond tables");
  Kahan acc;
  for (u64 n = 1; n <= n_cutoff; ++n)
    if (at.squarefree(n)) acc.add(1.0 / ((double)n * (double)at.phi(n)));
  return acc.value();
}

ValueWithError E2_eval(double s, u64 prime_cutoff) {
  if (!(s > -1.5)) throw std::domain_error("E2_eval: requires s > -3/2");
  ValueWithError r;
  dd prod(1.0);
  const bool at_minus1 = (s == -1.0);
  segmented_sieve(prime_cutoff, [&](u64 p) {
    if (at_minus1) return; // every factor is exactly 1
    dd pd = dd_from_u64(p);
    dd t1 = dd_pow(pd, -(s + 2.0));
    dd t2 = dd_sub(dd(1.0), dd_pow(pd, -(s + 1.0)));
    dd u = dd_div(dd_mul(t1, t2), dd_sub(pd, 1.0));
    prod = dd_mul(prod, dd_add(u, 1.0));
  });
  r.value = (double)prod;

  double X = (double)prime_cutoff;
  if (at_minus1) {
    r.err = 1e-25; // algebraic cancellation; rounding slack only
  } else {
    // |u_n| <= 2 n^{-(s+3)} (1 + n^{-(s+1)}) for n >= 2, |log(1+u)| <= 2|u|
    double b1 = std::pow(X, -(s + 2.0)) / (s + 2.0);
    double b2 = std::pow(X, -(2.0 * s + 3.0)) / (2.0 * s + 3.0);
    r.err = 4.0 * (b1 + b2) * std::fabs(r.value);
  }
  return r;
}

ValueWithError E2_prime_at_minus1(u64 prime_cutoff) {
  if (prime_cutoff < 2) throw std::domain_error("E2_prime: cutoff must be >= 2");
  ValueWithError r;
  dd sum(0.0);
  segmented_sieve(prime_cutoff, [&](u64 p) {
    dd den = dd_from_u64(p * (p - 1));
    sum = dd_add(sum, dd_div(dd(std::log((double)p)), den));
  });
  r.value = (double)sum;
  // tail <= int_X^inf log t/(t(t-1)) dt <= (log X + 1)/X + (2 log X + 1)/(2 X^2)
  double X = (double)prime_cutoff;
  r.err = (std::log(X) + 1.0) / X + (2.0 * std::log(X) + 1.0) / (2.0 * X * X);
  return r;
}

ConstantSet C_eval(u64 prime_cutoff) {
  if (prime_cutoff < 10000)
    throw std::domain_error("C_eval: prime cutoff must be >= 1e4");
  ConstantSet cs;
  cs.cutoff = prime_cutoff;

  KappaResult kr = kappa_eval(std::min<u64>(prime_cutoff, 1000000));
  cs.kappa = kr.value;
  cs.kappa_err = kr.err;

  // exact prime sum accumulated in double-double alongside the sieve
  dd S(0.0);
  segmented_sieve(prime_cutoff, [&](u64 p) {
    dd den = dd_from_u64(p * (p - 1));
    S = dd_add(S, dd_div(dd(std::log((double)p)), den));
  });
  double X = (double)prime_cutoff;
  cs.prime_log_sum = (double)S;
  cs.prime_log_sum_err =
      (std::log(X) + 1.0) / X + (2.0 * std::log(X) + 1.0) / (2.0 * X * X);

  cs.gamma0 = (double)GAMMA0;
  cs.zeta0 = -0.5;
  cs.zeta_prime0 = -(double)dd_mul(LOG_2PI, 0.5);

  // Gamma_{-1} = zeta(0) (-gamma0 - S) - zeta'(0)
  dd zeta0(-0.5);
  dd zetap0 = dd_neg(dd_mul(LOG_2PI, 0.5));
  dd gm1 = dd_sub(dd_mul(zeta0, dd_neg(dd_add(GAMMA0, S))), zetap0);
  cs.Gamma_minus1 = (double)gm1;
  cs.Gamma_minus1_err = 0.5 * cs.prime_log_sum_err;

  // C two ways: -(2 Gamma_{-1} + 1) and 2 zeta(0)(gamma0 + S) + 2 zeta'(0) - 1
  cs.C = (double)dd_neg(dd_add(dd_mul(gm1, 2.0), 1.0));
  cs.C_direct = (double)dd_sub(
      dd_add(dd_mul(dd_mul(zeta0, dd_add(GAMMA0, S)), 2.0), dd_mul(zetap0, 2.0)),
      1.0);
  cs.C_err = cs.prime_log_sum_err;
  return cs;
}

double theta_H_exact(double H, const ArithTables& at) {
  if (H < 1.0) throw std::domain_error("theta_H_exact: H must be >= 1");
  u64 hmax = (u64)std::floor(H);
  if (hmax > at.limit) throw std::domain_error("theta_H_exact: H beyond phi table");
  Kahan acc;
  for (u64 h = 1; h <= hmax; ++h) {
    double d = H - (double)h;
    acc.add(d * d / (double)at.phi(h));
  }
  return acc.value();
}

double theta_H_expansion(double H, const ConstantSet& cs, double Gamma0) {
  double lH = std::log(H);
  return cs.kappa * H * H * lH + 2.0 * Gamma0 * H * H + H * lH +
         2.0 * cs.Gamma_minus1 * H;
}

Gamma0Fit gamma0_fit(const std::vector<double>& H_grid, const ConstantSet& cs,
                     const ArithTables& at) {
  if (H_grid.size() < 4)
    throw std::invalid_argument("gamma0_fit: need at least 4 grid points");
  double lo = H_grid.front(), hi = H_grid.back();
  for (double H : H_grid)
    if (H < 100.0) throw std::invalid_argument("gamma0_fit: grid must have H >= 100");
  if (hi < 100.0 * lo)
    throw std::invalid_argument("gamma0_fit: grid must span at least two decades");

  Gamma0Fit fit;
  fit.H_grid = H_grid;
  std::vector<double> r2(H_grid.size()), wts(H_grid.size());
  for (std::size_t i = 0; i < H_grid.size(); ++i) {
    double H = H_grid[i];
    double exact = theta_H_exact(H, at);
    double known = cs.kappa * H * H * std::log(H) + H * std::log(H) +
                   2.0 * cs.Gamma_minus1 * H;
    r2[i] = (exact - known) / (H * H);
    // remainder in the original units is O(H^{1/2}); dividing by H^2 leaves
    // noise ~ H^{-3/2}, so the homoscedastic constant fit carries weights H^3
    wts[i] = H * H * H;
  }
  auto wmean = [&](std::size_t a, std::size_t b) {
    double s = 0.0, w = 0.0;
    for (std::size_t i = a; i < b; ++i) {
      s += wts[i] * r2[i];
      w += wts[i];
    }
    return s / w;
  };
  fit.Gamma0 = 0.5 * wmean(0, r2.size());
  std::size_t half = r2.size() / 2;
  fit.spread = 0.5 * std::fabs(wmean(0, half) - wmean(half, r2.size()));

  // normalized residual of the full expansion, and its log-log slope
  fit.resid_norm.resize(H_grid.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < H_grid.size(); ++i) {
    double H = H_grid[i];
    double res = theta_H_exact(H, at) - theta_H_expansion(H, cs, fit.Gamma0);
    fit.resid_norm[i] = std::fabs(res) / std::sqrt(H);
    fit.max_resid_norm = std::max(fit.max_resid_norm, fit.resid_norm[i]);
    double lx = std::log(H);
    double ly = std::log(std::max(fit.resid_norm[i], 1e-300));
    sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
  }
  double n = (double)H_grid.size();
  double denom = n * sxx - sx * sx;
  fit.resid_slope = (n * sxy - sx * sy) / denom;
  double ssr = 0.0;
  double b0 = (sy - fit.resid_slope * sx) / n;
  for (std::size_t i = 0; i < H_grid.size(); ++i) {
    double lx = std::log(H_grid[i]);
    double ly = std::log(std::max(fit.resid_norm[i], 1e-300));
    double e = ly - (b0 + fit.resid_slope * lx);
    ssr += e * e;
  }
  fit.resid_slope_err = std::sqrt(ssr / std::max(1.0, n - 2.0) / (sxx - sx * sx / n));
  return fit;
}

} // namespace apvar
