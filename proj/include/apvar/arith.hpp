#pragma once

#include <cstdint>
#include <vector>

#include "apvar/sieve.hpp"

namespace apvar {

using i64 = std::int64_t;

// phi, mu and squarefree flags for n <= limit, by linear sieve.
// Immutable after construction.  Queries above the table limit fall
// back to on-demand factorization.
struct ArithTables {
  u64 limit = 0;
  std::vector<std::uint32_t> phi_tab;
  std::vector<std::int8_t> mu_tab;

  static ArithTables build(u64 limit);

  u64 phi(u64 n) const;
  int mu(u64 n) const;
  bool squarefree(u64 n) const { return mu(n) != 0; }
};

// exact rational (always reduces to an integer for the sums we average,
// but the type keeps the defining quotient honest)
struct Rational {
  i64 num = 0;
  i64 den = 1;
  void reduce();
  bool operator==(const Rational&) const = default;
};

// Ramanujan sum c_q(h) = sum over a coprime to q of e(ah/q),
// via the closed form mu(q/g) phi(q) / phi(q/g) with g = gcd(h, q).
i64 ramanujan_c(const ArithTables& at, u64 q, i64 h);

// w_h(q) = (1/q) sum_{a=1..q} c_q(h a), evaluated exactly.
// For squarefree q this is phi(q) when q | h and 0 otherwise.
Rational w_coeff(const ArithTables& at, u64 q, i64 h);

} // namespace apvar
