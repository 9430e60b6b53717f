#include "apvar/variance.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "apvar/constants.hpp"
#include "apvar/fftr.hpp"
#include "apvar/kahan.hpp"
#include "apvar/parallel.hpp"

namespace apvar {

namespace {

// branch-free n mod d for 32-bit operands (Lemire's fastmod)
struct FastMod {
  u64 M = 0;
  std::uint32_t d = 1;
  explicit FastMod(std::uint32_t dv) : d(dv) {
    if (d > 1) M = ~std::uint64_t(0) / d + 1;
  }
  std::uint32_t mod(std::uint32_t n) const {
    if (d == 1) return 0;
    u64 low = M * n;
    return (std::uint32_t)(((unsigned __int128)low * d) >> 64);
  }
};

void distinct_prime_divisors(u64 m, std::vector<u64>& out) {
  out.clear();
  if (m % 2 == 0) {
    out.push_back(2);
    while (m % 2 == 0) m /= 2;
  }
  for (u64 p = 3; p * p <= m; p += 2)
    if (m % p == 0) {
      out.push_back(p);
      while (m % p == 0) m /= p;
    }
  if (m > 1) out.push_back(m);
}

struct Scratch {
  std::vector<double> th;
  std::vector<char> coprime;
  std::vector<u64> divisors;
};

// one pass over primes <= x for modulus m; fills everything except k/Fp
void modulus_pass(const PrimeTable& pt, std::size_t nprimes, u64 x, u64 m,
                  double logsq_total, Scratch& ws, ModulusInner& out) {
  out.fk = m;
  if ((std::size_t)m > ws.th.size()) {
    ws.th.resize(m);
    ws.coprime.resize(m);
  }
  std::fill(ws.th.begin(), ws.th.begin() + m, 0.0);
  FastMod fm((std::uint32_t)m);
  for (std::size_t i = 0; i < nprimes; ++i)
    ws.th[fm.mod((std::uint32_t)pt.primes[i])] += pt.logw[i];

  distinct_prime_divisors(m, ws.divisors);
  u64 phi = m;
  for (u64 d : ws.divisors) phi -= phi / d;
  out.phi_fk = phi;

  double div_log2 = 0.0;
  std::fill(ws.coprime.begin(), ws.coprime.begin() + m, 1);
  for (u64 d : ws.divisors) {
    for (u64 j = 0; j < m; j += d) ws.coprime[j] = 0;
    if (d <= x) {
      double ld = std::log((double)d);
      div_log2 += ld * ld;
    }
  }

  const double c = (double)x / (double)phi;
  double e2 = 0.0, th1 = 0.0, th2m = 0.0, th2all = 0.0;
  for (u64 l = 0; l < m; ++l) {
    double t = ws.th[l];
    th2all += t * t;
    if (ws.coprime[l]) {
      double e = t - c;
      e2 += e * e;
      th1 += t;
      th2m += t * t;
    }
  }
  out.e2 = e2;
  out.theta1 = th1;
  out.theta2 = th2m;
  out.offdiag = 0.5 * (th2all - logsq_total);
  out.diag_restricted = logsq_total - div_log2;
}

u64 f_real(const ModuliFamily& fam, double t) {
  double v = fam.F(t);
  return (u64)std::floor(v + 1e-12 * std::max(1.0, std::fabs(v)));
}

} // namespace

double inner_variance(const PrimeTable& pt, u64 x, u64 m,
                      std::size_t mem_budget_bytes) {
  if (m < 1) throw std::domain_error("inner_variance: m must be >= 1");
  if (m >= (u64(1) << 32) || x >= (u64(1) << 32))
    throw std::domain_error("inner_variance: operands beyond supported range");
  std::size_t nprimes = pt.count_below(x);
  if ((std::size_t)m * (sizeof(double) + 1) <= mem_budget_bytes) {
    Scratch ws;
    ModulusInner mi;
    // the off-diagonal fields depend on the total (log p)^2 sum, which e2
    // does not; skip that pass here
    modulus_pass(pt, nprimes, x, m, 0.0, ws, mi);
    return mi.e2;
  }
  // chunked multi-pass route for moduli beyond the memory budget
  u64 chunk = std::max<u64>(1024, mem_budget_bytes / (sizeof(double) + 1));
  std::vector<u64> divisors;
  distinct_prime_divisors(m, divisors);
  u64 phi = m;
  for (u64 d : divisors) phi -= phi / d;
  const double c = (double)x / (double)phi;
  FastMod fm((std::uint32_t)m);
  std::vector<double> th;
  std::vector<char> cop;
  Kahan e2;
  for (u64 a = 0; a < m; a += chunk) {
    u64 b = std::min(m, a + chunk);
    th.assign((std::size_t)(b - a), 0.0);
    cop.assign((std::size_t)(b - a), 1);
    for (std::size_t i = 0; i < nprimes; ++i) {
      u64 r = fm.mod((std::uint32_t)pt.primes[i]);
      if (r >= a && r < b) th[(std::size_t)(r - a)] += pt.logw[i];
    }
    for (u64 d : divisors)
      for (u64 j = ((a + d - 1) / d) * d; j < b; j += d) cop[(std::size_t)(j - a)] = 0;
    for (u64 l = a; l < b; ++l)
      if (cop[(std::size_t)(l - a)]) {
        double e = th[(std::size_t)(l - a)] - c;
        e2.add(e * e);
      }
  }
  return e2.value();
}

double off_diagonal(const PrimeTable& pt, u64 x, u64 m) {
  if (m < 1) throw std::domain_error("off_diagonal: m must be >= 1");
  if (m >= (u64(1) << 32) || x >= (u64(1) << 32))
    throw std::domain_error("off_diagonal: operands beyond supported range");
  std::size_t nprimes = pt.count_below(x);
  Scratch ws;
  ModulusInner mi;
  modulus_pass(pt, nprimes, x, m, pt.logsq_sum(x), ws, mi);
  return mi.offdiag;
}

std::vector<double> prime_lag_autocorr(const PrimeTable& pt, u64 x) {
  std::size_t n = pt.count_below(x);
  std::vector<double> a((std::size_t)x + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) a[(std::size_t)pt.primes[i]] = pt.logw[i];
  return autocorrelation(a);
}

double off_diagonal_from_lags(const std::vector<double>& lags, u64 m) {
  Kahan acc;
  for (u64 d = m; d < lags.size(); d += m) acc.add(lags[(std::size_t)d]);
  return acc.value();
}

PhiFResult phi_F(const ModuliFamily& fam, double z, double y, double kappa) {
  if (z < fam.y0) throw std::domain_error("phi_F: z below y0");
  PhiFResult r;
  u64 k_lo = (u64)std::floor(z) + 1;
  u64 k_hi = y < (double)k_lo ? 0 : (u64)std::floor(y);
  Kahan acc;
  for (u64 k = k_lo; k <= k_hi && k_hi > 0; ++k) {
    u64 fk = fam.f(k);
    acc.add(fam.Fprime((double)k) / (double)phi_u64(fk));
  }
  r.direct = acc.value();
  if (k_hi >= k_lo) {
    double fz = (double)f_real(fam, std::max(z, fam.y0));
    double fy = (double)f_real(fam, y);
    r.kappa_log = kappa * std::log(fy / fz);
  }
  r.gap = r.direct - r.kappa_log;
  return r;
}

MainTerm main_term(const ModuliFamily& fam, u64 x, double y, double C) {
  MainTerm mt;
  double fy = (double)f_real(fam, y);
  mt.below_domain = fy < 2.0;
  mt.value = (double)x * fy * std::log(fy) + C * (double)x * fy;
  return mt;
}

VarianceBreakdown v_windowed(const PrimeTable& pt, const ModuliFamily& fam,
                             u64 x, double z, double y, double C_main,
                             int threads, std::size_t ledger_cap) {
  std::vector<double> grid{y};
  auto v = variance_grid(pt, fam, x, z, grid, C_main, threads);
  VarianceBreakdown out = std::move(v.front());
  if (out.n_moduli > ledger_cap) out.ledger.clear();
  return out;
}

VarianceBreakdown v_full(const PrimeTable& pt, const ModuliFamily& fam, u64 x,
                         double y, double C_main, int threads,
                         std::size_t ledger_cap) {
  return v_windowed(pt, fam, x, fam.y0, y, C_main, threads, ledger_cap);
}

std::vector<VarianceBreakdown> variance_grid(const PrimeTable& pt,
                                             const ModuliFamily& fam, u64 x,
                                             double z,
                                             const std::vector<double>& y_grid,
                                             double C_main, int threads) {
  if (y_grid.empty()) return {};
  if (!std::is_sorted(y_grid.begin(), y_grid.end()))
    throw std::invalid_argument("variance_grid: y grid must be ascending");
  double y_max = y_grid.back();
  if (fam.F(std::max(y_max, fam.y0)) > (double)x * (1.0 + 1e-12))
    throw std::domain_error("variance window requires F(y) <= x");
  if (x > pt.limit) throw std::domain_error("variance: x exceeds prime table");
  if (x >= (u64(1) << 32))
    throw std::domain_error("variance: x beyond supported range");
  double z_eff = std::max(z, fam.y0);

  u64 k_lo = (u64)std::floor(z_eff) + 1;
  u64 k_hi = y_max < (double)k_lo ? k_lo - 1 : (u64)std::floor(y_max);
  std::size_t n_k = k_hi >= k_lo ? (std::size_t)(k_hi - k_lo + 1) : 0;

  std::size_t nprimes = pt.count_below(x);
  double logsq_total = pt.logsq_sum(x);

  std::vector<ModulusInner> rec(n_k);
  parallel_for(n_k, threads, [&](std::size_t i) {
    static thread_local Scratch ws;
    u64 k = k_lo + i;
    rec[i].k = k;
    rec[i].Fp = fam.Fprime((double)k);
    modulus_pass(pt, nprimes, x, fam.f(k), logsq_total, ws, rec[i]);
  });

  // sequential assembly in k order with snapshots at the grid points
  std::vector<VarianceBreakdown> out;
  out.reserve(y_grid.size());
  Kahan s0, s1, s1r, s2, phiF, vdirect;
  std::size_t i = 0;
  for (double yg : y_grid) {
    u64 kg = yg < (double)k_lo ? k_lo - 1 : (u64)std::floor(yg);
    while (i < n_k && rec[i].k <= kg) {
      const ModulusInner& r = rec[i];
      s0.add(r.Fp * r.offdiag);
      s1.add(r.Fp * r.theta2);
      s1r.add(r.Fp * (r.diag_restricted + 2.0 * r.offdiag));
      s2.add(r.Fp / (double)r.phi_fk * r.theta1);
      phiF.add(r.Fp / (double)r.phi_fk);
      vdirect.add(r.Fp * r.e2);
      ++i;
    }
    VarianceBreakdown b;
    b.x = x;
    b.z = z_eff;
    b.y = yg;
    b.f_z = f_real(fam, z_eff);
    b.f_y = yg < fam.y0 ? 0 : f_real(fam, yg);
    b.n_moduli = i;
    b.S0 = s0.value();
    b.S1 = s1.value();
    b.S2 = s2.value();
    b.PhiF = phiF.value();
    b.Vprime = vdirect.value();
    b.Vprime_decomp = b.S1 - 2.0 * (double)x * b.S2 + (double)x * (double)x * b.PhiF;
    double scale = std::max(std::fabs(b.Vprime), 1e-300);
    b.identity_gap_rel = std::fabs(b.Vprime - b.Vprime_decomp) / scale;
    if (yg >= fam.y0) {
      MainTerm mt = main_term(fam, x, yg, C_main);
      b.main_term = mt.value;
    }
    b.residual = b.Vprime - b.main_term;
    b.logsq_total = logsq_total;
    b.s1_restricted = s1r.value();
    b.s1_unrestricted = 2.0 * b.S0 + (double)b.f_y * logsq_total;
    out.push_back(std::move(b));
  }
  // attach the ledger to the last (largest-window) snapshot
  if (n_k <= 10000 && !out.empty()) out.back().ledger = std::move(rec);
  return out;
}

S0Check s0_closed_form_check(const PrimeTable& pt, const ModuliFamily& fam,
                             const ArithTables& at, u64 x, double y1, double y,
                             int threads) {
  S0Check r;
  if (y <= y1) return r; // empty window
  auto b = v_windowed(pt, fam, x, y1, y, 0.0, threads, 0);
  r.lhs = 2.0 * b.S0;
  double f1 = (double)b.f_z;
  double fy = (double)b.f_y;
  r.rhs = f1 * f1 * theta_H_exact((double)x / f1, at) -
          fy * fy * theta_H_exact((double)x / fy, at);
  r.rel_gap = std::fabs(r.lhs - r.rhs) / std::max(std::fabs(r.rhs), 1e-300);
  return r;
}

} // namespace apvar
