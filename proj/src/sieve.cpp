#include "apvar/sieve.hpp"

#include <algorithm>
#include <cmath>

namespace apvar {

void segmented_sieve(u64 limit, const std::function<void(u64)>& visit,
                     std::size_t segment_size) {
  if (limit < 2) throw std::domain_error("segmented_sieve: limit must be >= 2");

  u64 root = (u64)std::sqrt((double)limit);
  while (root * root > limit) --root;
  while ((root + 1) * (root + 1) <= limit) ++root;

  // small primes <= sqrt(limit)
  std::vector<char> is_prime(root + 1, 1);
  for (u64 i = 2; i * i <= root; ++i)
    if (is_prime[i])
      for (u64 j = i * i; j <= root; j += i) is_prime[j] = 0;

  std::vector<u64> small;
  for (u64 i = 2; i <= root; ++i)
    if (is_prime[i]) small.push_back(i);

  std::vector<char> seg(segment_size);
  for (u64 low = 2; low <= limit; low += segment_size) {
    u64 high = std::min(low + segment_size - 1, limit);
    std::size_t len = (std::size_t)(high - low + 1);
    std::fill(seg.begin(), seg.begin() + len, 1);
    for (u64 p : small) {
      if (p * p > high) break;
      u64 start = std::max(p * p, ((low + p - 1) / p) * p);
      for (u64 j = start; j <= high; j += p) seg[(std::size_t)(j - low)] = 0;
    }
    for (u64 n = low; n <= high; ++n)
      if (seg[(std::size_t)(n - low)]) visit(n);
  }
}

PrimeTable PrimeTable::build(u64 limit, std::size_t segment_size) {
  PrimeTable pt;
  pt.limit = limit;
  segmented_sieve(limit, [&pt](u64 p) {
    pt.primes.push_back(p);
    pt.logw.push_back(std::log((double)p));
  }, segment_size);
  return pt;
}

std::size_t PrimeTable::count_below(u64 x) const {
  if (x > limit) throw std::domain_error("PrimeTable: x exceeds table limit");
  return (std::size_t)(std::upper_bound(primes.begin(), primes.end(), x) - primes.begin());
}

double PrimeTable::theta(u64 x, u64 q, long long l) const {
  if (q < 1) throw std::domain_error("theta: q must be >= 1");
  u64 r = canon_residue(l, q);
  std::size_t n = count_below(x);
  Kahan acc;
  for (std::size_t i = 0; i < n; ++i)
    if (primes[i] % q == r) acc.add(logw[i]);
  return acc.value();
}

double PrimeTable::logsq_sum(u64 x) const {
  std::size_t n = count_below(x);
  Kahan acc;
  for (std::size_t i = 0; i < n; ++i) acc.add(logw[i] * logw[i]);
  return acc.value();
}

double PrimeTable::E_term(u64 x, u64 q, long long l) const {
  u64 r = canon_residue(l, q);
  if (gcd_u64(r == 0 ? q : r, q) != 1)
    throw std::domain_error("E_term: residue not coprime to modulus");
  return theta(x, q, l) - (double)x / (double)phi_u64(q);
}

u64 gcd_u64(u64 a, u64 b) {
  while (b) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u64 phi_u64(u64 n) {
  u64 result = n;
  for (u64 p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  if (n > 1) result -= result / n;
  return result;
}

} // namespace apvar
