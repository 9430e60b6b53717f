#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "apvar/arith.hpp"
#include "apvar/moduli.hpp"
#include "apvar/sieve.hpp"

namespace apvar {

using cplx = std::complex<double>;

// Farey-dissection parameters: P = L^{C5}, R = x L^{-C6} with L = log x.
struct ArcParams {
  double P = 1.0;
  double R = 2.0;
  double C5 = 0.0, C6 = 0.0, C7 = 0.0;
  double A = 1.0, B = 2.0;

  static ArcParams from_knobs(u64 x, double C5, double C6, double C7,
                              double A, double B);

  // The large-x inequalities tying C5, C6, C7 to A and B.  At desk scale
  // they cannot hold, so violations are surfaced as warnings, not errors.
  std::vector<std::string> strict_violations() const;
};

struct Arc {
  bool major = false;
  i64 a = 0; // numerator, 1 <= a <= q, gcd(a, q) = 1
  u64 q = 0;
};

// Classify alpha in (0, 1] by continued fractions: major iff some a/q with
// q <= P has |alpha - a/q| <= 1/(qR).  Pre: R > 2 P^2 (disjoint arcs).
Arc classify_alpha(double alpha, const ArcParams& arcs);

// U(alpha) = sum_{p<=x} log p e(alpha p)
cplx U_eval(const PrimeTable& pt, u64 x, double alpha);

// T(alpha) = sum_{z<k<=y} F'(k) sum_{h<=x/f(k)} e(alpha h f(k))
cplx T_eval(const ModuliFamily& fam, double z, double y, u64 x, double alpha);

// v(beta) = sum_{m<=x} e(m beta), closed geometric form
cplx v_eval(u64 x, double beta);

// c_h(beta) = (1 - e(-beta)) / (2 pi i (h + beta))
cplx c_h_coeff(i64 h, double beta);

// The finite Fourier identity behind int_0^1 T |U|^2: the integral is
// evaluated exactly as a lag-indexed convolution and compared against the
// off-diagonal sum from the variance pass.
struct OrthoResult {
  double integral = 0.0;
  double direct = 0.0;
  double rel_gap = 0.0;
};
OrthoResult orthogonality_check(const PrimeTable& pt, const ModuliFamily& fam,
                                double z, double y, u64 x, int threads);

// H(q) = sum_k F'(k) sum_{h<=x/f(k)} c_q(h f(k)) ([x] - h f(k))
double H_of_q(const ArithTables& at, const ModuliFamily& fam, double z,
              double y, u64 x, u64 q);

// M0 = sum over squarefree q <= P of mu(q)^2/phi(q)^2 times the H-style
// inner sum with x in place of [x]
double M0_exact(const ArithTables& at, const ModuliFamily& fam, double z,
                double y, u64 x, const ArcParams& arcs);

// The two reduced forms of M0: the h-sum of closed-form integrals
// (limits f(y1), f(y(h))), and the weighted-quadratic-sum form at the
// window ends.  They differ by O(1)-endpoint shifts; the gap is reported.
struct M0Main {
  double h_sum_form = 0.0;
  double theta_form = 0.0;
  double gap = 0.0;
};
M0Main M0_main_term(const ArithTables& at, const ModuliFamily& fam, u64 x,
                    double y1, double y);

// N(K, K1, q, l): count of k in (K, K1] with f(k) = l (mod q)
struct EquidistCount {
  u64 count = 0;
  double expected = 0.0; // (K1 - K)/q
};
EquidistCount equidist_count(const ModuliFamily& fam, u64 K, u64 K1, u64 q,
                             u64 l);

// single exponential sum over a dyadic block, with the phase beta F(n)
// reduced mod 1 in double-double before trig evaluation
struct ExpSumSample {
  u64 N = 0, N1 = 0;
  double beta = 0.0;
  cplx value{0.0, 0.0};
  double normalized = 0.0; // |value| / N
};
ExpSumSample expsum_single(const ModuliFamily& fam, u64 N, u64 N1, double beta);

// double sum over M < m <= 2M, K < k <= K1 with m f(k) <= x
cplx expsum_double(const ModuliFamily& fam, double alpha, double M, u64 K,
                   u64 K1, u64 x, int threads);

} // namespace apvar
