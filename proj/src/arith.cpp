#include "apvar/arith.hpp"

#include <numeric>
#include <stdexcept>

namespace apvar {

ArithTables ArithTables::build(u64 limit) {
  if (limit < 1) throw std::domain_error("ArithTables: limit must be >= 1");
  ArithTables at;
  at.limit = limit;
  std::size_t n = (std::size_t)limit + 1;
  at.phi_tab.assign(n, 0);
  at.mu_tab.assign(n, 0);
  at.phi_tab[1] = 1;
  at.mu_tab[1] = 1;
  std::vector<std::uint32_t> primes;
  std::vector<char> comp(n, 0);
  for (u64 i = 2; i <= limit; ++i) {
    if (!comp[i]) {
      primes.push_back((std::uint32_t)i);
      at.phi_tab[i] = (std::uint32_t)(i - 1);
      at.mu_tab[i] = -1;
    }
    for (std::uint32_t p : primes) {
      u64 m = i * p;
      if (m > limit) break;
      comp[m] = 1;
      if (i % p == 0) {
        at.phi_tab[m] = at.phi_tab[i] * p;
        at.mu_tab[m] = 0;
        break;
      }
      at.phi_tab[m] = at.phi_tab[i] * (p - 1);
      at.mu_tab[m] = (std::int8_t)(-at.mu_tab[i]);
    }
  }
  return at;
}

namespace {

// factor n into (prime, exponent) pairs by trial division
void factor_u64(u64 n, std::vector<std::pair<u64, int>>& out) {
  out.clear();
  for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2))
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) { n /= p; ++e; }
      out.emplace_back(p, e);
    }
  if (n > 1) out.emplace_back(n, 1);
}

} // namespace

u64 ArithTables::phi(u64 n) const {
  if (n == 0) throw std::domain_error("phi(0) undefined");
  if (n <= limit) return phi_tab[(std::size_t)n];
  return phi_u64(n);
}

int ArithTables::mu(u64 n) const {
  if (n == 0) throw std::domain_error("mu(0) undefined");
  if (n <= limit) return mu_tab[(std::size_t)n];
  std::vector<std::pair<u64, int>> f;
  factor_u64(n, f);
  int m = 1;
  for (auto& [p, e] : f) {
    (void)p;
    if (e > 1) return 0;
    m = -m;
  }
  return m;
}

void Rational::reduce() {
  if (den < 0) { num = -num; den = -den; }
  i64 g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) { num /= g; den /= g; }
}

i64 ramanujan_c(const ArithTables& at, u64 q, i64 h) {
  if (q < 1) throw std::domain_error("ramanujan_c: q must be >= 1");
  u64 hr = canon_residue(h, q); // c_q(h) depends on h mod q only
  u64 g = hr == 0 ? q : gcd_u64(hr, q);
  u64 qg = q / g;
  int m = at.mu(qg);
  if (m == 0) return 0;
  return (i64)m * (i64)(at.phi(q) / at.phi(qg));
}

Rational w_coeff(const ArithTables& at, u64 q, i64 h) {
  if (q < 1) throw std::domain_error("w_coeff: q must be >= 1");
  i64 hr = (i64)canon_residue(h, q); // c_q(ha) depends on ha mod q only
  i64 sum = 0;
  for (u64 a = 1; a <= q; ++a) sum += ramanujan_c(at, q, hr * (i64)a);
  Rational r{sum, (i64)q};
  r.reduce();
  return r;
}

} // namespace apvar
