#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

// In-place iterative radix-2 FFT. Forward uses the e^{-i w t} analysis
// convention; inverse applies the 1/N normalization.

namespace eitfwm {

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

namespace detail {

inline void fft_radix2(std::vector<std::complex<double>>& a, bool inverse) {
  const std::size_t n = a.size();
  if (!is_power_of_two(n)) throw std::invalid_argument("fft: size must be a power of two");

  // bit-reversal permutation
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = (inverse ? 2.0 : -2.0) * M_PI / double(len);
    const std::complex<double> wl{std::cos(ang), std::sin(ang)};
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w{1.0, 0.0};
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }

  if (inverse) {
    for (auto& x : a) x /= double(n);
  }
}

}  // namespace detail

inline void fft_forward(std::vector<std::complex<double>>& a) { detail::fft_radix2(a, false); }
inline void fft_inverse(std::vector<std::complex<double>>& a) { detail::fft_radix2(a, true); }

// Angular frequency of FFT bin k for sample spacing dt (standard fftfreq layout).
inline double fft_bin_omega(std::size_t k, std::size_t n, double dt) {
  const double df = 1.0 / (double(n) * dt);
  const double f = (k < n / 2 ? double(k) : double(k) - double(n)) * df;
  return 2.0 * M_PI * f;
}

}  // namespace eitfwm
