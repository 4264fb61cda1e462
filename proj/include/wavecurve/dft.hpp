#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

// Discrete Fourier transforms of arbitrary length.  Power-of-two sizes run
// through an iterative radix-2 kernel; everything else goes through the
// Bluestein chirp-z reduction, so callers never have to care about the
// factorisation of the transform length.

namespace wavecurve {

inline constexpr double kPi = 3.14159265358979323846;

namespace detail {

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline void fft_radix2_in_place(std::vector<std::complex<double>>& a, bool inverse) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = (inverse ? 2.0 : -2.0) * kPi / static_cast<double>(len);
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> w = std::polar(1.0, ang * static_cast<double>(k));
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
      }
    }
  }
}

// Bluestein: X_f = w^{f^2} * sum_k (x_k w^{k^2}) w^{-(f-k)^2}, w = exp(sign*i*pi/n).
// Squared indices are reduced mod 2n before the complex exponential so the
// phase argument stays small regardless of n.
inline std::vector<std::complex<double>> bluestein(const std::vector<std::complex<double>>& x,
                                                   bool inverse) {
  const std::size_t n = x.size();
  const double sign = inverse ? 1.0 : -1.0;
  std::vector<std::complex<double>> chirp(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::uint64_t q = (static_cast<std::uint64_t>(k) * k) % (2 * n);
    chirp[k] = std::polar(1.0, sign * kPi * static_cast<double>(q) / static_cast<double>(n));
  }
  std::size_t m = 1;
  while (m < 2 * n - 1) m <<= 1;
  std::vector<std::complex<double>> u(m), v(m);
  for (std::size_t k = 0; k < n; ++k) u[k] = x[k] * chirp[k];
  v[0] = std::conj(chirp[0]);
  for (std::size_t k = 1; k < n; ++k) {
    v[k] = std::conj(chirp[k]);
    v[m - k] = v[k];
  }
  fft_radix2_in_place(u, false);
  fft_radix2_in_place(v, false);
  for (std::size_t k = 0; k < m; ++k) u[k] *= v[k];
  fft_radix2_in_place(u, true);
  std::vector<std::complex<double>> out(n);
  const double inv_m = 1.0 / static_cast<double>(m);
  for (std::size_t f = 0; f < n; ++f) out[f] = u[f] * inv_m * chirp[f];
  return out;
}

}  // namespace detail

// Forward transform: X_f = sum_k x_k exp(-2*pi*i*f*k/n).
// Inverse transform includes the 1/n factor, so dft(dft(x), true) == x.
inline std::vector<std::complex<double>> dft(std::vector<std::complex<double>> x, bool inverse = false) {
  const std::size_t n = x.size();
  if (n <= 1) return x;
  if (detail::is_power_of_two(n)) {
    detail::fft_radix2_in_place(x, inverse);
    if (inverse) {
      const double s = 1.0 / static_cast<double>(n);
      for (auto& c : x) c *= s;
    }
    return x;
  }
  std::vector<std::complex<double>> out = detail::bluestein(x, inverse);
  if (inverse) {
    const double s = 1.0 / static_cast<double>(n);
    for (auto& c : out) c *= s;
  }
  return out;
}

}  // namespace wavecurve
