#pragma once

// Approximation coefficients of a closed curve directly from its Fourier
// descriptors: since the scaling function's transform is the infinite
// product of refinement masks, the inner products <gamma, phi_jk> collapse
// to a finite sum over the stored modes,
//
//   a_jk = 2^{-j/2} sum_m gamma_m e^{i omega m k / 2^j} phihat(-m / (l 2^j)),
//
// with no quadrature and no cascade involved.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "wavecurve/filters.hpp"
#include "wavecurve/fourier_contour.hpp"
#include "wavecurve/periodic_signal.hpp"

namespace wavecurve {

struct InitConfig {
  int level = 0;
  // The mask product is truncated once a factor is within product_tol of 1;
  // factors approach 1 geometrically, so the dropped tail is of the same
  // order.  max_factors is a hard stop for safety.
  double product_tol = 1e-14;
  int max_factors = 64;
};

// Coarsest level at which the periodized basis stays linearly independent:
// the scaling function's support (width beta) has to fit into the period.
// The Haar case has no such constraint beyond one coefficient pair.
inline int min_level(const FilterBank& bank) {
  const long beta = bank.support();
  if (beta <= 1) return 1;
  int t = 1;
  while ((1L << (t - 1)) < beta - 1) ++t;
  return t;
}

inline std::complex<double> phi_hat(const FilterBank& bank, double xi, double product_tol = 1e-14,
                                    int max_factors = 64) {
  if (product_tol <= 0.0) throw std::invalid_argument("phi_hat: product_tol must be positive");
  std::complex<double> prod(1.0, 0.0);
  for (int n = 1; n <= max_factors; ++n) {
    const double arg = xi / std::pow(2.0, n);
    const std::complex<double> factor = refinement_mask(bank, arg);
    prod *= factor;
    // A factor near 1 only certifies the tail once the argument itself is
    // small: the mask is 1-periodic, so H(integer) = 1 without the later
    // factors being trivial.
    if (std::fabs(arg) < 0.5 && std::abs(factor - std::complex<double>(1.0, 0.0)) < product_tol)
      break;
  }
  return prod;
}

namespace detail {

inline std::complex<double> init_sum(const FourierContour& fc, int s, long k, int level,
                                     const std::vector<std::complex<double>>& phihat_pos) {
  // phihat_pos[m] = phihat(m / (l 2^level)); negative modes by conjugation
  const double w = fc.omega();
  const double cell = std::pow(2.0, -level);
  std::complex<double> acc(0.0, 0.0);
  const auto& half = fc.coeffs[static_cast<std::size_t>(s)];
  for (std::size_t m = 0; m < half.size(); ++m) {
    const double phase = w * static_cast<double>(m) * static_cast<double>(k) * cell;
    const std::complex<double> osc(std::cos(phase), std::sin(phase));
    // phihat(-m / (l 2^j)) = conj(phihat(m / (l 2^j))) for real filters
    acc += half[m] * osc * std::conj(phihat_pos[m]);
    if (m > 0) acc += std::conj(half[m] * osc) * phihat_pos[m];
  }
  return acc * std::pow(2.0, -0.5 * level);
}

inline std::vector<std::complex<double>> phihat_table(const FourierContour& fc,
                                                      const FilterBank& bank,
                                                      const InitConfig& cfg) {
  std::vector<std::complex<double>> table(fc.modes());
  const double denom = fc.period * std::pow(2.0, cfg.level);
  for (std::size_t m = 0; m < table.size(); ++m)
    table[m] = phi_hat(bank, static_cast<double>(m) / denom, cfg.product_tol, cfg.max_factors);
  return table;
}

inline double take_real(const std::complex<double>& z) {
  if (std::fabs(z.imag()) >= 1e-9)
    throw std::runtime_error("init_approx_coeffs: symmetry violation (imaginary residue)");
  return z.real();
}

}  // namespace detail

// One coefficient at an arbitrary index, including indices outside the
// stored window; a_jk is 2^j-periodic in k.  Meant for validation against
// quadrature oracles.
inline std::array<double, 2> init_coeff_at(const FourierContour& fc, const FilterBank& bank,
                                           const InitConfig& cfg, long k) {
  if (cfg.level < min_level(bank))
    throw std::invalid_argument("init_coeff_at: level below the minimum for this bank");
  const auto table = detail::phihat_table(fc, bank, cfg);
  return {detail::take_real(detail::init_sum(fc, 0, k, cfg.level, table)),
          detail::take_real(detail::init_sum(fc, 1, k, cfg.level, table))};
}

// The central coefficient window k = -2^{j-1} .. 2^{j-1} - 1 per component.
inline std::array<PeriodicSignal, 2> init_approx_coeffs(const FourierContour& fc,
                                                        const FilterBank& bank,
                                                        const InitConfig& cfg) {
  if (cfg.level < min_level(bank))
    throw std::invalid_argument("init_approx_coeffs: level below the minimum for this bank");
  if (cfg.level > 30) throw std::invalid_argument("init_approx_coeffs: level out of range");
  if (fc.period <= 0.0) throw std::invalid_argument("init_approx_coeffs: period must be positive");
  const auto table = detail::phihat_table(fc, bank, cfg);
  const long len = 1L << cfg.level;
  std::array<PeriodicSignal, 2> out{PeriodicSignal::zeros(static_cast<std::size_t>(len)),
                                    PeriodicSignal::zeros(static_cast<std::size_t>(len))};
  for (int s = 0; s < 2; ++s) {
    auto& sig = out[static_cast<std::size_t>(s)];
    for (long k = sig.first_index(); k <= sig.last_index(); ++k)
      sig.slot(k) = detail::take_real(detail::init_sum(fc, s, k, cfg.level, table));
  }
  return out;
}

}  // namespace wavecurve
