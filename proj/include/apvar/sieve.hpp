#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "apvar/kahan.hpp"

namespace apvar {

using u64 = std::uint64_t;

// Segmented sieve of Eratosthenes.  Visits every prime <= limit in
// increasing order; memory stays O(segment + sqrt(limit)).
void segmented_sieve(u64 limit, const std::function<void(u64)>& visit,
                     std::size_t segment_size = 1u << 18);

// Primes <= limit together with their natural-log weights.
// Immutable after construction; safe to share across threads.
struct PrimeTable {
  u64 limit = 0;
  std::vector<u64> primes;
  std::vector<double> logw;

  static PrimeTable build(u64 limit, std::size_t segment_size = 1u << 18);

  std::size_t count() const { return primes.size(); }

  // number of primes <= x (x <= limit)
  std::size_t count_below(u64 x) const;

  // theta(x; q, l) = sum of log p over p <= x, p = l (mod q).
  // l is canonicalized mod q; compensated summation.
  double theta(u64 x, u64 q, long long l) const;

  // full Chebyshev theta(x)
  double theta_all(u64 x) const { return theta(x, 1, 0); }

  // sum of (log p)^2 over p <= x
  double logsq_sum(u64 x) const;

  // E(x; q, l) = theta(x;q,l) - x/phi(q); requires gcd(l, q) = 1
  double E_term(u64 x, u64 q, long long l) const;
};

// canonical residue in [0, q)
inline u64 canon_residue(long long l, u64 q) {
  long long m = l % (long long)q;
  if (m < 0) m += (long long)q;
  return (u64)m;
}

u64 gcd_u64(u64 a, u64 b);

// Euler phi by trial division (standalone; for tabulated values see ArithTables)
u64 phi_u64(u64 n);

} // namespace apvar
