#include "apvar/moduli.hpp"

#include <cmath>
#include <stdexcept>

#include "apvar/dd.hpp"

namespace apvar {

std::string family_name(FamilyKind k) {
  switch (k) {
    case FamilyKind::identity: return "identity";
    case FamilyKind::power: return "power";
    case FamilyKind::subexp: return "subexp";
  }
  return "?";
}

ModuliFamily ModuliFamily::identity() {
  ModuliFamily fam;
  fam.kind = FamilyKind::identity;
  fam.y0 = 2.0; // F(y) = y >= 2
  return fam;
}

ModuliFamily ModuliFamily::power(double c) {
  if (!(c > 1.0) || c == std::round(c))
    throw std::domain_error("power family requires c > 1 and c not an integer");
  ModuliFamily fam;
  fam.kind = FamilyKind::power;
  fam.c = c;
  // F(y) >= 2 needs y >= 2^(1/c); F'(y) = c y^(c-1) >= 1 needs y >= c^(-1/(c-1))
  double y0 = std::max(std::pow(2.0, 1.0 / c), std::pow(c, -1.0 / (c - 1.0)));
  while (std::pow(y0, c) < 2.0 || c * std::pow(y0, c - 1.0) < 1.0)
    y0 *= 1.0 + 1e-12;
  fam.y0 = y0;
  return fam;
}

ModuliFamily ModuliFamily::subexp(double gamma) {
  if (!(gamma > 1.0 && gamma < 1.5))
    throw std::domain_error("subexp family requires 1 < gamma < 3/2");
  ModuliFamily fam;
  fam.kind = FamilyKind::subexp;
  fam.gamma = gamma;
  // smallest integer with F >= 2 and F' >= 1, by scan
  auto Fs = [gamma](double t) { return std::exp(std::pow(std::log(t), gamma)); };
  auto Fps = [&Fs, gamma](double t) {
    double lt = std::log(t);
    return Fs(t) * gamma * std::pow(lt, gamma - 1.0) / t;
  };
  double y = 2.0;
  while (Fs(y) < 2.0 || Fps(y) < 1.0) y += 1.0;
  fam.y0 = y;
  return fam;
}

void ModuliFamily::check_domain(double t) const {
  if (t < y0) throw std::domain_error("moduli family: argument below y0");
}

double ModuliFamily::F(double t) const {
  check_domain(t);
  switch (kind) {
    case FamilyKind::identity: return t;
    case FamilyKind::power: return std::pow(t, c);
    case FamilyKind::subexp: return std::exp(std::pow(std::log(t), gamma));
  }
  return 0.0;
}

double ModuliFamily::Fprime(double t) const {
  check_domain(t);
  switch (kind) {
    case FamilyKind::identity: return 1.0;
    case FamilyKind::power: return c * std::pow(t, c - 1.0);
    case FamilyKind::subexp: {
      double lt = std::log(t);
      return std::exp(std::pow(lt, gamma)) * gamma * std::pow(lt, gamma - 1.0) / t;
    }
  }
  return 0.0;
}

namespace {

u64 isqrt_u128(unsigned __int128 n) {
  u64 r = (u64)std::sqrt((double)n);
  while ((unsigned __int128)r * r > n) --r;
  while ((unsigned __int128)(r + 1) * (r + 1) <= n) ++r;
  return r;
}

} // namespace

u64 ModuliFamily::f(u64 k) const {
  check_domain((double)k);
  if (kind == FamilyKind::identity) return k;
  if (kind == FamilyKind::power && 2.0 * c == std::round(2.0 * c)) {
    // half-integer exponent: floor(k^c) = isqrt(k^{2c}) exactly
    int m = (int)std::llround(2.0 * c);
    unsigned __int128 pw = 1;
    bool overflow = false;
    for (int i = 0; i < m; ++i) {
      if (pw > ((unsigned __int128)1 << 126) / std::max<u64>(k, 1)) {
        overflow = true;
        break;
      }
      pw *= k;
    }
    if (!overflow) return isqrt_u128(pw);
  }
  double v = F((double)k);
  double fl = std::floor(v);
  double tol = std::max(1e-9, 4e-14 * std::fabs(v));
  if (v - fl < tol || fl + 1.0 - v < tol) {
    // ambiguous at double precision: redo in double-double and snap the
    // residual dd rounding away from the integer boundary
    dd vd;
    switch (kind) {
      case FamilyKind::identity: vd = dd((double)k); break;
      case FamilyKind::power: vd = dd_pow(dd((double)k), c); break;
      case FamilyKind::subexp:
        vd = dd_exp(dd_pow(dd_log(dd((double)k)), gamma));
        break;
    }
    dd flo = dd_floor(vd);
    double up_gap = (double)dd_sub(dd_add(flo, 1.0), vd);
    if (up_gap < 1e-22 * std::max(1.0, std::fabs(vd.hi)))
      return (u64)(flo.hi + 1.0);
    return (u64)flo.hi;
  }
  return (u64)fl;
}

double ModuliFamily::F_inverse(double v) const {
  double fy0 = F(y0);
  if (v < fy0 * (1.0 - 1e-12))
    throw std::domain_error("F_inverse: value below F(y0)");
  double t;
  switch (kind) {
    case FamilyKind::identity: return std::max(v, y0);
    case FamilyKind::power: t = std::pow(v, 1.0 / c); break;
    case FamilyKind::subexp: t = std::exp(std::pow(std::log(v), 1.0 / gamma)); break;
    default: t = v;
  }
  t = std::max(t, y0);
  // Newton polish to relative 1e-12 (closed-form seeds are already close)
  for (int i = 0; i < 8; ++i) {
    double err = F(t) - v;
    if (std::fabs(err) <= 1e-13 * std::fabs(v)) break;
    double step = err / Fprime(t);
    double tn = t - step;
    if (tn < y0) tn = y0;
    t = tn;
  }
  return t;
}

double y1_bound(const ModuliFamily& fam, const WindowParams& w) {
  if (w.x < 16) throw std::domain_error("y1_bound: x must be >= 16");
  double target = (double)w.x * std::pow(std::log((double)w.x), -w.B);
  if (target < fam.F(fam.y0))
    throw std::domain_error("y1_bound: window empty, x (log x)^{-B} below F(y0)");
  return fam.F_inverse(target);
}

double y_of_h(const ModuliFamily& fam, u64 h, u64 x, double y) {
  if (h < 1) throw std::domain_error("y_of_h: h must be >= 1");
  fam.check_domain(y);
  double target = std::min(fam.F(y), (double)x / (double)h);
  if (target < fam.F(fam.y0))
    throw std::domain_error("y_of_h: window empty, x/h below F(y0)");
  return fam.F_inverse(target);
}

double subexp_window_start(u64 x, double C1) {
  double ll = std::log(std::log((double)x));
  return std::exp(std::pow(ll, C1));
}

DyadicSet dyadic_set(const ModuliFamily& fam, u64 Q) {
  if (Q < 1) throw std::domain_error("dyadic_set: Q must be >= 1");
  DyadicSet out;
  double fy0 = fam.F(fam.y0);
  u64 k_lo, k_hi;
  if ((double)(2 * Q) < fy0) return out;
  // bracket k by the inverse, then filter with exact floors
  double lo = (double)Q < fy0 ? fam.y0 : fam.F_inverse((double)Q);
  double hi = fam.F_inverse((double)(2 * Q) + 1.0);
  k_lo = lo <= 2.0 ? 1 : (u64)std::floor(lo) - 1;
  k_hi = (u64)std::ceil(hi) + 1;
  u64 prev = 0;
  for (u64 k = std::max<u64>(k_lo, (u64)std::ceil(fam.y0)); k <= k_hi; ++k) {
    u64 fk = fam.f(k);
    if (fk > 2 * Q) break;
    if (fk > Q) {
      if (!out.members.empty() && fk == prev) {
        out.had_duplicates = true;
        continue;
      }
      out.members.emplace_back(k, fk);
      prev = fk;
    }
  }
  return out;
}

} // namespace apvar
