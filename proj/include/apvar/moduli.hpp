#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "apvar/sieve.hpp"

namespace apvar {

// The moduli are integer parts f(k) = [F(k)] of a smooth increasing F.
// Three families are supported:
//   power:    F(t) = t^c          (c > 1, c not an integer)
//   subexp:   F(t) = exp((log t)^gamma)   (1 < gamma < 3/2)
//   identity: F(t) = t            (the classical dense-moduli baseline)
enum class FamilyKind { identity, power, subexp };

std::string family_name(FamilyKind k);

struct ModuliFamily {
  FamilyKind kind = FamilyKind::identity;
  double c = 0.0;     // power exponent
  double gamma = 0.0; // subexp exponent
  double y0 = 2.0;    // domain start: F(y) >= 2 and F'(y) >= 1 for y >= y0

  static ModuliFamily identity();
  static ModuliFamily power(double c);
  static ModuliFamily subexp(double gamma);

  double F(double t) const;
  double Fprime(double t) const;

  // f(k) = floor(F(k)); near-integer values are re-evaluated in
  // double-double before flooring (a wrong floor changes a modulus).
  u64 f(u64 k) const;

  // inverse of F, relative accuracy 1e-12
  double F_inverse(double v) const;

  void check_domain(double t) const; // throws below y0
};

struct WindowParams {
  u64 x = 0;
  double A = 1.0;
  double B = 2.0;
  double C1 = 0.0; // subexp only; must exceed 1/(3 - 2 gamma)
};

// y1 defined by F(y1) = x (log x)^{-B}
double y1_bound(const ModuliFamily& fam, const WindowParams& w);

// y(h) defined by F(y(h)) = min(F(y), x/h)
double y_of_h(const ModuliFamily& fam, u64 h, u64 x, double y);

// theorem-2 style lower window edge exp((log log x)^{C1})
double subexp_window_start(u64 x, double C1);

// dyadic moduli set: all k with Q < f(k) <= 2Q, as (k, f(k)) pairs.
// Values are distinct when F' >= 1 on the range; duplicates (possible
// only below y0) are merged with the flag set.
struct DyadicSet {
  std::vector<std::pair<u64, u64>> members; // (k, f(k))
  bool had_duplicates = false;
};

DyadicSet dyadic_set(const ModuliFamily& fam, u64 Q);

} // namespace apvar
