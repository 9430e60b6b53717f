#pragma once

#include <cmath>

// Compensated (Kahan-Neumaier) accumulator.  The variance sums run to
// ~1e10 terms with totals near x^2, where naive accumulation would eat
// the residual we are trying to measure.

namespace apvar {

struct Kahan {
  double sum = 0.0;
  double comp = 0.0;

  void add(double v) {
    double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }

  void add(const Kahan& other) {
    add(other.sum);
    comp += other.comp;
  }

  double value() const { return sum + comp; }
};

} // namespace apvar
