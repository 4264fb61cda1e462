#pragma once

// Slow reference implementations used to validate the library numerics.
// Everything here is written independently of the production code paths:
// plain summation formulas, no shared helpers beyond the standard library.

#include <cmath>
#include <complex>
#include <cstddef>
#include <random>
#include <vector>

namespace oracles {

inline constexpr double kPi = 3.14159265358979323846;

// O(n^2) definition-level DFT.
inline std::vector<std::complex<double>> naive_dft(const std::vector<std::complex<double>>& x,
                                                   bool inverse) {
  const std::size_t n = x.size();
  std::vector<std::complex<double>> out(n);
  const double sign = inverse ? 2.0 : -2.0;
  for (std::size_t f = 0; f < n; ++f) {
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t k = 0; k < n; ++k)
      acc += x[k] * std::polar(1.0, sign * kPi * double(f) * double(k) / double(n));
    out[f] = inverse ? acc / double(n) : acc;
  }
  return out;
}

// Direct periodic convolution of a two-sided signal (length 2N, first logical
// index -N) with a two-sided filter (length 2M-1, first logical index 1-M):
// out_k = sum_{|k2| <= M-1} a~_{k-k2} g_{k2}, with a~ the 2N-periodic extension.
inline std::vector<double> direct_periodic_convolve(const std::vector<double>& a,
                                                    const std::vector<double>& g) {
  const long long len = static_cast<long long>(a.size());
  const long long n_half = len / 2;
  const long long m = (static_cast<long long>(g.size()) + 1) / 2;
  std::vector<double> out(a.size(), 0.0);
  for (long long k = -n_half; k < len - n_half; ++k) {
    double acc = 0.0;
    for (long long k2 = 1 - m; k2 <= m - 1; ++k2) {
      long long idx = k - k2 + n_half;  // storage offset of a_{k-k2}
      idx %= len;
      if (idx < 0) idx += len;
      acc += a[static_cast<std::size_t>(idx)] * g[static_cast<std::size_t>(k2 + m - 1)];
    }
    out[static_cast<std::size_t>(k + n_half)] = acc;
  }
  return out;
}

// Closed-form db2 low-pass filter, solved by hand from the sum rule,
// orthonormality and the two vanishing moments.
inline std::vector<double> db2_lowpass_closed_form() {
  const double s3 = std::sqrt(3.0);
  const double d = 4.0 * std::sqrt(2.0);
  return {(1.0 + s3) / d, (3.0 + s3) / d, (3.0 - s3) / d, (1.0 - s3) / d};
}

inline double u01(std::mt19937_64& rng) {
  return double(rng() >> 11) * 0x1.0p-53;
}

// Area centroid of a simple closed polygon by the shoelace formulas.
// Works for any point type exposing .x and .y.
template <class Poly>
inline std::pair<double, double> shoelace_centroid(const Poly& poly) {
  double a2 = 0.0, cx = 0.0, cy = 0.0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = poly[i];
    const auto& q = poly[(i + 1) % n];
    const double cross = p.x * q.y - q.x * p.y;
    a2 += cross;
    cx += (p.x + q.x) * cross;
    cy += (p.y + q.y) * cross;
  }
  return {cx / (3.0 * a2), cy / (3.0 * a2)};
}

}  // namespace oracles
