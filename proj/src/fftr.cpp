#include "apvar/fftr.hpp"

#include <cmath>

namespace apvar {

void fft(std::vector<std::complex<double>>& a, bool inverse) {
  const std::size_t n = a.size();
  if (n < 2) return;
  // n must be a power of two
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    double ang = 2.0 * M_PI / (double)len * (inverse ? -1.0 : 1.0);
    std::complex<double> wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        auto u = a[i + j];
        auto v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wl;
      }
    }
  }
  if (inverse)
    for (auto& z : a) z /= (double)n;
}

std::vector<double> autocorrelation(const std::vector<double>& a) {
  const std::size_t n = a.size();
  std::size_t size = 1;
  while (size < 2 * n) size <<= 1;
  std::vector<std::complex<double>> buf(size, {0.0, 0.0});
  for (std::size_t i = 0; i < n; ++i) buf[i] = a[i];
  fft(buf, false);
  for (auto& z : buf) z = z * std::conj(z);
  fft(buf, true);
  std::vector<double> c(n);
  for (std::size_t d = 0; d < n; ++d) c[d] = buf[d].real();
  return c;
}

} // namespace apvar
