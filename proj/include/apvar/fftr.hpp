#pragma once

#include <complex>
#include <vector>

namespace apvar {

// In-place iterative radix-2 FFT (inverse divides by n).
void fft(std::vector<std::complex<double>>& a, bool inverse);

// Linear autocorrelation c[d] = sum_n a[n] a[n+d] for d = 0..n-1,
// via zero-padded FFT.
std::vector<double> autocorrelation(const std::vector<double>& a);

} // namespace apvar
