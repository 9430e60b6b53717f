#pragma once

// Double-double arithmetic: an unevaluated sum of two doubles giving
// ~31 significant digits.  Classic error-free transformations
// (two_sum / two_prod with FMA), plus the few transcendentals this
// project needs: exp, log, pow, and mod-1 reduction for large phases.

#include <cmath>
#include <cstdint>
#include <limits>

namespace apvar {

struct dd {
  double hi = 0.0;
  double lo = 0.0;

  constexpr dd() = default;
  constexpr dd(double h) : hi(h), lo(0.0) {}
  constexpr dd(double h, double l) : hi(h), lo(l) {}

  explicit operator double() const { return hi + lo; }
};

namespace detail {

inline dd quick_two_sum(double a, double b) {
  // requires |a| >= |b|
  double s = a + b;
  return {s, b - (s - a)};
}

inline dd two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

inline dd two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

} // namespace detail

inline dd dd_add(dd a, dd b) {
  dd s = detail::two_sum(a.hi, b.hi);
  double e = s.lo + a.lo + b.lo;
  return detail::quick_two_sum(s.hi, e);
}

inline dd dd_add(dd a, double b) {
  dd s = detail::two_sum(a.hi, b);
  return detail::quick_two_sum(s.hi, s.lo + a.lo);
}

inline dd dd_neg(dd a) { return {-a.hi, -a.lo}; }
inline dd dd_sub(dd a, dd b) { return dd_add(a, dd_neg(b)); }
inline dd dd_sub(dd a, double b) { return dd_add(a, -b); }

inline dd dd_mul(dd a, dd b) {
  dd p = detail::two_prod(a.hi, b.hi);
  double e = p.lo + a.hi * b.lo + a.lo * b.hi;
  return detail::quick_two_sum(p.hi, e);
}

inline dd dd_mul(dd a, double b) {
  dd p = detail::two_prod(a.hi, b);
  return detail::quick_two_sum(p.hi, p.lo + a.lo * b);
}

inline dd dd_div(dd a, dd b) {
  double q1 = a.hi / b.hi;
  dd r = dd_sub(a, dd_mul(b, q1));
  double q2 = r.hi / b.hi;
  r = dd_sub(r, dd_mul(b, q2));
  double q3 = r.hi / b.hi;
  dd q = detail::quick_two_sum(q1, q2);
  return dd_add(q, q3);
}

inline dd dd_div(double a, double b) { return dd_div(dd(a), dd(b)); }

inline dd dd_sqr(dd a) {
  dd p = detail::two_prod(a.hi, a.hi);
  double e = p.lo + 2.0 * a.hi * a.lo;
  return detail::quick_two_sum(p.hi, e);
}

inline bool dd_lt(dd a, dd b) { return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo); }
inline double dd_abs_hi(dd a) { return std::fabs(a.hi); }

inline dd dd_sqrt(dd a) {
  if (a.hi <= 0.0) return dd(a.hi < 0.0 ? std::numeric_limits<double>::quiet_NaN() : 0.0);
  double y = std::sqrt(a.hi);
  // one Newton step: y' = y + (a - y^2) / (2y)
  dd r = dd_sub(a, detail::two_prod(y, y));
  return dd_add(dd(y), r.hi / (2.0 * y));
}

// floor of a dd value; exact for |a| < 2^106
inline dd dd_floor(dd a) {
  double f = std::floor(a.hi);
  if (f != a.hi) return dd(f);
  // hi is integral: the fractional information sits in lo
  return detail::quick_two_sum(f, std::floor(a.lo));
}

// fractional part in [0,1)
inline dd dd_frac(dd a) {
  dd f = dd_sub(a, dd_floor(a));
  if (f.hi < 0.0) f = dd_add(f, 1.0);
  if (f.hi >= 1.0) f = dd_sub(f, 1.0);
  return f;
}

// ln 2 = 0.693147180559945309417232121458...
inline constexpr dd dd_ln2{0.6931471805599453, 2.3190468138462996e-17};
// pi = 3.14159265358979323846264338327950...
inline constexpr dd dd_pi{3.141592653589793, 1.2246467991473532e-16};
// 2 pi
inline constexpr dd dd_2pi{6.283185307179586, 2.4492935982947064e-16};

// exp via argument reduction: x = k ln2 + r, e^r by Taylor on r/2^9.
inline dd dd_exp(dd x) {
  if (x.hi > 709.0) return dd(std::numeric_limits<double>::infinity());
  if (x.hi < -709.0) return dd(0.0);
  double k = std::round(x.hi / dd_ln2.hi);
  dd r = dd_sub(x, dd_mul(dd_ln2, k));
  // scale down so the Taylor series converges in ~15 terms
  constexpr double scale = 512.0; // 2^9
  r = dd_mul(r, 1.0 / scale);
  dd sum = dd_add(dd(1.0), r);
  dd term = r;
  for (int i = 2; i <= 18; ++i) {
    term = dd_mul(dd_mul(term, r), 1.0 / double(i));
    sum = dd_add(sum, term);
    if (std::fabs(term.hi) < 1e-35 * std::fabs(sum.hi)) break;
  }
  for (int i = 0; i < 9; ++i) sum = dd_sqr(sum); // undo the 2^9 reduction
  return dd_mul(sum, std::ldexp(1.0, int(k)));
}

// log via one dd Newton step from the double seed: y += x e^{-y} - 1
inline dd dd_log(dd x) {
  double y0 = std::log(x.hi);
  dd y(y0);
  for (int it = 0; it < 2; ++it) {
    dd e = dd_exp(dd_neg(y));
    dd corr = dd_sub(dd_mul(x, e), 1.0);
    y = dd_add(y, corr);
  }
  return y;
}

// x^a for x > 0
inline dd dd_pow(dd x, double a) { return dd_exp(dd_mul(dd_log(x), a)); }

// integer power by binary exponentiation
inline dd dd_powi(dd x, long long n) {
  if (n == 0) return dd(1.0);
  bool inv = n < 0;
  unsigned long long m = inv ? -(unsigned long long)n : (unsigned long long)n;
  dd acc(1.0), base = x;
  while (m) {
    if (m & 1) acc = dd_mul(acc, base);
    base = dd_sqr(base);
    m >>= 1;
  }
  return inv ? dd_div(dd(1.0), acc) : acc;
}

} // namespace apvar
