#pragma once

// Test-only reference implementations: brute-force enumerations kept
// deliberately independent of the library code paths they check.

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace oracles {

using u64 = std::uint64_t;
using i64 = std::int64_t;

inline std::vector<u64> naive_sieve(u64 limit) {
  std::vector<char> is(limit + 1, 1);
  std::vector<u64> out;
  for (u64 n = 2; n <= limit; ++n) {
    if (!is[n]) continue;
    out.push_back(n);
    for (u64 m = n * n; m <= limit; m += n) is[m] = 0;
  }
  return out;
}

inline bool is_prime_td(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline u64 pi_td(u64 x) {
  u64 c = 0;
  for (u64 n = 2; n <= x; ++n)
    if (is_prime_td(n)) ++c;
  return c;
}

inline u64 gcd_o(u64 a, u64 b) { return b == 0 ? a : gcd_o(b, a % b); }

inline u64 phi_o(u64 n) {
  u64 c = 0;
  for (u64 a = 1; a <= n; ++a)
    if (gcd_o(a, n) == 1) ++c;
  return c;
}

inline double theta_direct(const std::vector<u64>& primes, u64 x, u64 q, u64 l) {
  double s = 0.0;
  for (u64 p : primes)
    if (p <= x && p % q == l % q) s += std::log((double)p);
  return s;
}

inline double theta_direct(u64 x, u64 q, u64 l) {
  return theta_direct(naive_sieve(x), x, q, l);
}

inline double E_direct(const std::vector<u64>& primes, u64 x, u64 q, u64 l) {
  return theta_direct(primes, x, q, l) - (double)x / (double)phi_o(q);
}

inline double E_direct(u64 x, u64 q, u64 l) {
  return E_direct(naive_sieve(x), x, q, l);
}

// sum over coprime classes of squared remainders
inline double inner_direct(u64 x, u64 m) {
  auto primes = naive_sieve(x);
  double s = 0.0;
  for (u64 l = 0; l < m; ++l) {
    u64 g = l == 0 ? m : gcd_o(l, m);
    if (g != 1 && m != 1) continue;
    double e = E_direct(primes, x, m, l);
    s += e * e;
  }
  return s;
}

// sum over p1 < p2 <= x with p1 = p2 (mod m) of log p1 log p2
inline double offdiag_pairs(u64 x, u64 m) {
  std::vector<u64> ps = naive_sieve(x);
  double s = 0.0;
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j)
      if ((ps[j] - ps[i]) % m == 0)
        s += std::log((double)ps[i]) * std::log((double)ps[j]);
  return s;
}

// Ramanujan sum by its defining complex exponential sum
inline double ramanujan_direct(u64 q, i64 h) {
  double re = 0.0;
  for (u64 a = 1; a <= q; ++a) {
    if (gcd_o(a, q) != 1) continue;
    double ang = 2.0 * M_PI * (double)((i64)a * h % (i64)q) / (double)q;
    re += std::cos(ang);
  }
  return re;
}

// w_h(q) by the counting identity #{b in [1,q], (b,q)=1, q | b h}
inline i64 w_count(u64 q, i64 h) {
  i64 c = 0;
  u64 hr = (u64)(((h % (i64)q) + (i64)q) % (i64)q);
  for (u64 b = 1; b <= q; ++b)
    if (gcd_o(b, q) == 1 && (b * hr) % q == 0) ++c;
  return c;
}

// zeta(3) by Euler-Maclaurin in long double (independent of the library)
inline long double zeta3_oracle() {
  const int N = 2000;
  long double s = 0.0L;
  for (int n = 1; n <= N; ++n) s += 1.0L / ((long double)n * n * n);
  long double Nl = N;
  s += 1.0L / (2.0L * Nl * Nl);       // integral tail
  s -= 1.0L / (2.0L * Nl * Nl * Nl);  // -N^{-3}/2
  s += 3.0L / (12.0L * Nl * Nl * Nl * Nl); // B_2 term s N^{-s-1}/12
  return s;
}

} // namespace oracles
