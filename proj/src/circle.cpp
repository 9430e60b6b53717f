#include "apvar/circle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "apvar/constants.hpp"
#include "apvar/dd.hpp"
#include "apvar/kahan.hpp"
#include "apvar/parallel.hpp"
#include "apvar/variance.hpp"

namespace apvar {

namespace {

// e(t) for a phase already reduced to [0, 1)
cplx unit_phase(double frac) {
  double ang = (double)dd_mul(dd_2pi, frac);
  return {std::cos(ang), std::sin(ang)};
}

// e(t) with t given in double-double, reduced mod 1 first
cplx unit_phase(dd t) { return unit_phase((double)dd_frac(t)); }

// sin(pi t) with t reduced mod 2 in double-double (period-2 parity matters)
double sin_pi(dd t) {
  dd half = dd_mul(t, 0.5);
  dd m = dd_mul(dd_sub(half, dd_floor(half)), 2.0); // t mod 2 in [0, 2)
  double v = (double)m;
  if (v < 1.0) return std::sin(M_PI * v);
  return -std::sin(M_PI * (v - 1.0));
}

// Dirichlet kernel sum_{h=1}^{H} e(h u), u reduced mod 1; exact closed form
cplx geometric_phase_sum(dd u, double H) {
  dd w = dd_frac(u);
  if ((double)w == 0.0) return {H, 0.0};
  double s = sin_pi(w);
  if (s == 0.0) return {H, 0.0};
  double amp = sin_pi(dd_mul(w, H)) / s;
  return amp * unit_phase(dd_mul(w, (H + 1.0) * 0.5));
}

dd F_dd(const ModuliFamily& fam, u64 n) {
  switch (fam.kind) {
    case FamilyKind::identity: return dd((double)n);
    case FamilyKind::power: return dd_pow(dd((double)n), fam.c);
    case FamilyKind::subexp:
      return dd_exp(dd_pow(dd_log(dd((double)n)), fam.gamma));
  }
  return dd(0.0);
}

} // namespace

ArcParams ArcParams::from_knobs(u64 x, double C5, double C6, double C7,
                                double A, double B) {
  ArcParams a;
  double L = std::log((double)x);
  a.P = std::pow(L, C5);
  a.R = (double)x * std::pow(L, -C6);
  a.C5 = C5;
  a.C6 = C6;
  a.C7 = C7;
  a.A = A;
  a.B = B;
  if (a.P < 1.0 || a.R <= a.P)
    throw std::domain_error("ArcParams: need P >= 1 and R > P");
  return a;
}

std::vector<std::string> ArcParams::strict_violations() const {
  std::vector<std::string> v;
  if (C5 < 8.0 * A + 1.0 + B)
    v.push_back("C5 < 8A + 1 + B (strict-mode requirement)");
  if (C6 < C5 + 12.0 * A + 2.0)
    v.push_back("C6 < C5 + 12A + 2 (strict-mode requirement)");
  double c4 = 1.0 / 20.0; // the power-family exponent is below 1/20
  if (C7 < (8.0 * A + 2.0) / c4)
    v.push_back("C7 < (8A + 2)/c4 (strict-mode requirement, c4 = 1/20)");
  return v;
}

Arc classify_alpha(double alpha, const ArcParams& arcs) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::domain_error("classify_alpha: alpha must be in (0, 1]");
  if (!(arcs.R > 2.0 * arcs.P * arcs.P))
    throw std::domain_error(
        "classify_alpha: R <= 2 P^2, arcs may overlap (ambiguous)");

  // convergents of alpha; any a/q with q <= P and |alpha - a/q| <= 1/(qR)
  // satisfies |alpha - a/q| < 1/(2q^2), hence is a convergent
  u64 p_prev = 0, q_prev = 1; // p_{-2}/q_{-2}
  u64 p_cur = 1, q_cur = 0;   // p_{-1}/q_{-1}
  double t = alpha;
  for (int iter = 0; iter < 64; ++iter) {
    double fl = std::floor(t);
    u64 a0 = (u64)fl;
    // the next denominator would overflow u64 only far beyond any P in use
    if (q_cur > 0 && a0 > (~u64(0) - q_prev) / q_cur) break;
    u64 p_next = a0 * p_cur + p_prev;
    u64 q_next = a0 * q_cur + q_prev;
    if ((double)q_next > arcs.P) break;
    p_prev = p_cur;
    q_prev = q_cur;
    p_cur = p_next;
    q_cur = q_next;
    double diff = std::fabs(alpha - (double)p_cur / (double)q_cur);
    if (diff <= 1.0 / ((double)q_cur * arcs.R)) {
      if (p_cur == 0) return {true, 1, 1}; // alpha near 0: the 1/1 arc mod 1
      return {true, (i64)p_cur, q_cur};
    }
    double frac = t - fl;
    if (frac < 1e-15) break;
    t = 1.0 / frac;
  }
  return {false, 0, 0};
}

cplx U_eval(const PrimeTable& pt, u64 x, double alpha) {
  std::size_t n = pt.count_below(x);
  Kahan re, im;
  for (std::size_t i = 0; i < n; ++i) {
    cplx e = unit_phase(detail::two_prod(alpha, (double)pt.primes[i]));
    re.add(pt.logw[i] * e.real());
    im.add(pt.logw[i] * e.imag());
  }
  return {re.value(), im.value()};
}

cplx v_eval(u64 x, double beta) {
  // sum_{m<=x} e(m beta), the beta -> 0 limit handled explicitly
  return geometric_phase_sum(dd(beta), (double)x);
}

cplx T_eval(const ModuliFamily& fam, double z, double y, u64 x, double alpha) {
  u64 k_lo = (u64)std::floor(std::max(z, fam.y0)) + 1;
  u64 k_hi = y < (double)k_lo ? 0 : (u64)std::floor(y);
  Kahan re, im;
  for (u64 k = k_lo; k <= k_hi && k_hi > 0; ++k) {
    u64 fk = fam.f(k);
    u64 H = fk == 0 ? 0 : x / fk;
    if (H == 0) continue;
    double Fp = fam.Fprime((double)k);
    cplx inner =
        geometric_phase_sum(detail::two_prod(alpha, (double)fk), (double)H);
    re.add(Fp * inner.real());
    im.add(Fp * inner.imag());
  }
  return {re.value(), im.value()};
}

cplx c_h_coeff(i64 h, double beta) {
  double hb = (double)h + beta;
  if (hb == 0.0) throw std::domain_error("c_h_coeff: pole at h + beta = 0");
  cplx num = 1.0 - unit_phase(dd(-beta));
  cplx den = cplx(0.0, 2.0 * M_PI) * hb;
  return num / den;
}

OrthoResult orthogonality_check(const PrimeTable& pt, const ModuliFamily& fam,
                                double z, double y, u64 x, int threads) {
  if (x > 10000)
    throw std::domain_error("orthogonality_check: refuse x > 1e4 (cost guard)");
  OrthoResult r;
  u64 k_lo = (u64)std::floor(std::max(z, fam.y0)) + 1;
  u64 k_hi = y < (double)k_lo ? 0 : (u64)std::floor(y);
  if (k_hi < k_lo) return r; // empty window: (0, 0)

  // lag route: c[d] = sum of log p1 log p2 over p2 - p1 = d
  std::vector<double> lags = prime_lag_autocorr(pt, x);
  Kahan integral;
  for (u64 k = k_lo; k <= k_hi; ++k) {
    u64 fk = fam.f(k);
    double Fp = fam.Fprime((double)k);
    Kahan inner;
    for (u64 hf = fk; hf <= x; hf += fk) inner.add(lags[(std::size_t)hf]);
    integral.add(Fp * inner.value());
  }
  r.integral = integral.value();

  // direct route: S0 over the same window from the residue-class pass
  std::size_t n_k = (std::size_t)(k_hi - k_lo + 1);
  std::vector<double> parts(n_k);
  parallel_for(n_k, threads, [&](std::size_t i) {
    u64 k = k_lo + i;
    parts[i] = fam.Fprime((double)k) * off_diagonal(pt, x, fam.f(k));
  });
  Kahan direct;
  for (double v : parts) direct.add(v);
  r.direct = direct.value();
  r.rel_gap = std::fabs(r.integral - r.direct) /
              std::max(std::fabs(r.direct), 1e-300);
  return r;
}

double H_of_q(const ArithTables& at, const ModuliFamily& fam, double z,
              double y, u64 x, u64 q) {
  if (q < 1) throw std::domain_error("H_of_q: q must be >= 1");
  u64 k_lo = (u64)std::floor(std::max(z, fam.y0)) + 1;
  u64 k_hi = y < (double)k_lo ? 0 : (u64)std::floor(y);
  double xf = std::floor((double)x); // [x]
  Kahan acc;
  for (u64 k = k_lo; k <= k_hi && k_hi > 0; ++k) {
    u64 fk = fam.f(k);
    double Fp = fam.Fprime((double)k);
    Kahan inner;
    for (u64 h = 1; h * fk <= x; ++h) {
      i64 cq = ramanujan_c(at, q, (i64)canon_residue((i64)(h * fk), q));
      inner.add((double)cq * (xf - (double)(h * fk)));
    }
    acc.add(Fp * inner.value());
  }
  return acc.value();
}

double M0_exact(const ArithTables& at, const ModuliFamily& fam, double z,
                double y, u64 x, const ArcParams& arcs) {
  u64 P = (u64)std::floor(arcs.P);
  u64 k_lo = (u64)std::floor(std::max(z, fam.y0)) + 1;
  u64 k_hi = y < (double)k_lo ? 0 : (u64)std::floor(y);
  Kahan acc;
  for (u64 q = 1; q <= std::max<u64>(P, 1); ++q) {
    if (!at.squarefree(q)) continue;
    double w = 1.0 / ((double)at.phi(q) * (double)at.phi(q));
    Kahan hq;
    for (u64 k = k_lo; k <= k_hi && k_hi > 0; ++k) {
      u64 fk = fam.f(k);
      double Fp = fam.Fprime((double)k);
      Kahan inner;
      for (u64 h = 1; h * fk <= x; ++h) {
        i64 cq = ramanujan_c(at, q, (i64)canon_residue((i64)(h * fk), q));
        inner.add((double)cq * ((double)x - (double)(h * fk)));
      }
      hq.add(Fp * inner.value());
    }
    acc.add(w * hq.value());
  }
  return acc.value();
}

M0Main M0_main_term(const ArithTables& at, const ModuliFamily& fam, u64 x,
                    double y1, double y) {
  M0Main r;
  if (y <= y1) return r;
  double f1 = std::floor(fam.F(y1) + 1e-12 * std::max(1.0, fam.F(y1)));
  double fy = std::floor(fam.F(y) + 1e-12 * std::max(1.0, fam.F(y)));
  if (f1 < 1.0) throw std::domain_error("M0_main_term: f(y1) < 1");

  // h-sum of closed-form integrals int_{f(y1)}^{f(y(h))} (x - h t) dt,
  // antiderivative t (x - h t / 2)
  Kahan hsum;
  u64 hmax = (u64)std::floor((double)x / f1);
  for (u64 h = 1; h <= hmax; ++h) {
    double yh;
    try {
      yh = y_of_h(fam, h, x, y);
    } catch (const std::domain_error&) {
      break; // x/h fell below F(y0): no window left
    }
    double fyh = std::floor(fam.F(yh) + 1e-12 * std::max(1.0, fam.F(yh)));
    if (fyh <= f1) continue;
    double W = (double)h / (double)at.phi(h);
    double hi = fyh * ((double)x - 0.5 * (double)h * fyh);
    double lo = f1 * ((double)x - 0.5 * (double)h * f1);
    hsum.add(W * (hi - lo));
  }
  r.h_sum_form = hsum.value();

  // weighted-quadratic-sum form at the window ends
  r.theta_form = 0.5 * (f1 * f1 * theta_H_exact((double)x / f1, at) -
                        fy * fy * theta_H_exact((double)x / fy, at));
  r.gap = r.h_sum_form - r.theta_form;
  return r;
}

EquidistCount equidist_count(const ModuliFamily& fam, u64 K, u64 K1, u64 q,
                             u64 l) {
  if (!(K < K1 && K1 <= 2 * K))
    throw std::domain_error("equidist_count: need K < K1 <= 2K");
  EquidistCount r;
  r.expected = (double)(K1 - K) / (double)q;
  for (u64 k = K + 1; k <= K1; ++k)
    if (fam.f(k) % q == l % q) ++r.count;
  return r;
}

ExpSumSample expsum_single(const ModuliFamily& fam, u64 N, u64 N1,
                           double beta) {
  if (!(N < N1 && N1 <= 2 * N))
    throw std::domain_error("expsum_single: need N < N1 <= 2N");
  ExpSumSample s;
  s.N = N;
  s.N1 = N1;
  s.beta = beta;
  Kahan re, im;
  for (u64 n = N + 1; n <= N1; ++n) {
    cplx e = unit_phase(dd_mul(F_dd(fam, n), beta));
    re.add(e.real());
    im.add(e.imag());
  }
  s.value = {re.value(), im.value()};
  s.normalized = std::abs(s.value) / (double)N;
  return s;
}

cplx expsum_double(const ModuliFamily& fam, double alpha, double M, u64 K,
                   u64 K1, u64 x, int threads) {
  if (!(K < K1 && K1 <= 2 * K))
    throw std::domain_error("expsum_double: need K < K1 <= 2K");
  if (!(M >= 0.5)) throw std::domain_error("expsum_double: need M >= 1/2");
  u64 m_lo = (u64)std::floor(M) + 1;
  u64 m_hi = (u64)std::floor(2.0 * M);
  if (m_hi < m_lo) return {0.0, 0.0};
  std::size_t n_m = (std::size_t)(m_hi - m_lo + 1);
  std::vector<cplx> partial(n_m, cplx{0.0, 0.0});
  parallel_for(n_m, threads, [&](std::size_t i) {
    u64 m = m_lo + i;
    Kahan re, im;
    for (u64 k = K + 1; k <= K1; ++k) {
      u64 fk = fam.f(k);
      if (m * fk > x) break; // f increasing in k
      cplx e = unit_phase(detail::two_prod(alpha, (double)(m * fk)));
      re.add(e.real());
      im.add(e.imag());
    }
    partial[i] = {re.value(), im.value()};
  });
  Kahan re, im;
  for (const cplx& p : partial) {
    re.add(p.real());
    im.add(p.imag());
  }
  return {re.value(), im.value()};
}

} // namespace apvar
