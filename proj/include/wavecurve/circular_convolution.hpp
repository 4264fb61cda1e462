#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "wavecurve/dft.hpp"
#include "wavecurve/periodic_signal.hpp"

// Periodic convolution of two-sided signals with two-sided filters, plus the
// dyadic resampling operators.  The main path evaluates both factors at the
// roots of unity: extend one period of the signal, zero-pad signal and filter
// to a common length K~ = 2(N + 2M - 2), reorder the two-sided layout into
// DFT order, transform, multiply, invert, reorder back and truncate to the
// central window.  The partial extension makes K~ wide enough that the cyclic
// product carries no wrap-around alias, so the result equals the direct
// periodic summation up to roundoff.  Filters longer than the signal fall
// back to direct summation over the full periodic extension.

namespace wavecurve {

// One period of a, extended at both ends so every filter tap sees real data:
// logical indices 1-N-M .. N+M-2, length K = 2(N+M-1).  Requires 2 <= M <= N.
inline std::vector<double> periodic_extend(const PeriodicSignal& a, long m) {
  const long n = static_cast<long>(a.size()) / 2;
  if (m < 2) throw std::invalid_argument("extension radius must be at least 2");
  if (m > n) throw std::invalid_argument("extension radius exceeds signal half-length");
  const long first = 1 - n - m;
  const long count = 2 * (n + m - 1);
  std::vector<double> out(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = a.at(first + i);
  return out;
}

namespace detail {

// Centered two-sided storage -> DFT index order (non-negative half first).
// The map is an involution, so it also serves as the inverse reorder.
inline std::vector<std::complex<double>> reorder_half(const std::vector<std::complex<double>>& c) {
  const std::size_t len = c.size();
  std::vector<std::complex<double>> v(len);
  for (std::size_t t = 0; t < len; ++t) v[t] = c[(t + len / 2) % len];
  return v;
}

inline PeriodicSignal convolve_direct(const PeriodicSignal& a, const TwoSidedFilter& g) {
  const long m = g.radius();
  std::vector<double> out(a.size(), 0.0);
  const long first = a.first_index();
  for (long i = 0; i < static_cast<long>(a.size()); ++i) {
    const long k = first + i;
    double acc = 0.0;
    for (long k2 = 1 - m; k2 <= m - 1; ++k2) acc += a.at(k - k2) * g.at(k2);
    out[static_cast<std::size_t>(i)] = acc;
  }
  return PeriodicSignal(std::move(out));
}

inline PeriodicSignal convolve_spectral(const PeriodicSignal& a, const TwoSidedFilter& g) {
  const long n = static_cast<long>(a.size()) / 2;
  const long m = g.radius();
  const std::vector<double> ext = periodic_extend(a, m);
  const long k_ext = static_cast<long>(ext.size());
  const long k_pad = k_ext + 2 * (m - 1);  // 2(N + 2M - 2)

  std::vector<std::complex<double>> sig(static_cast<std::size_t>(k_pad));
  std::vector<std::complex<double>> fil(static_cast<std::size_t>(k_pad));
  const long margin = (k_pad - k_ext) / 2;
  for (long i = 0; i < k_ext; ++i)
    sig[static_cast<std::size_t>(margin + i)] = ext[static_cast<std::size_t>(i)];
  for (long k = 1 - m; k <= m - 1; ++k)
    fil[static_cast<std::size_t>(k_pad / 2 + k)] = g.at(k);

  auto sig_f = dft(reorder_half(sig));
  auto fil_f = dft(reorder_half(fil));
  for (std::size_t i = 0; i < sig_f.size(); ++i) sig_f[i] *= fil_f[i];
  const auto prod = reorder_half(dft(std::move(sig_f), true));

  std::vector<double> out(a.size());
  for (long k = -n; k < n; ++k)
    out[static_cast<std::size_t>(k + n)] = prod[static_cast<std::size_t>(k + k_pad / 2)].real();
  return PeriodicSignal(std::move(out));
}

}  // namespace detail

inline PeriodicSignal circular_convolve(const PeriodicSignal& a, const TwoSidedFilter& g) {
  const long n = static_cast<long>(a.size()) / 2;
  if (g.radius() <= n) return detail::convolve_spectral(a, g);
  return detail::convolve_direct(a, g);
}

// Keep the even-indexed coefficients: out_k = a_{2k} for -N/2 <= k < N/2.
inline PeriodicSignal downsample(const PeriodicSignal& a) {
  const long n = static_cast<long>(a.size()) / 2;
  if (n < 2) throw std::invalid_argument("cannot halve a signal below length 2");
  std::vector<double> out(static_cast<std::size_t>(n));
  for (long k = -n / 2; k < n / 2; ++k)
    out[static_cast<std::size_t>(k + n / 2)] = a.at(2 * k);
  return PeriodicSignal(std::move(out));
}

// Interleave zeros: out_k = a_{k/2} for even k, 0 otherwise.  Accepts the
// degenerate single-coefficient signal so reconstruction can start anywhere.
inline PeriodicSignal upsample(const PeriodicSignal& a) {
  const long len = static_cast<long>(a.size());
  std::vector<double> out(static_cast<std::size_t>(2 * len), 0.0);
  for (long k = -len; k < len; ++k) {
    if (k % 2 != 0) continue;
    out[static_cast<std::size_t>(k + len)] = a.at(k / 2);
  }
  return PeriodicSignal(std::move(out));
}

}  // namespace wavecurve
