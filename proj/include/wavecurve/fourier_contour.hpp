#pragma once

// Fourier descriptors of a closed planar curve.  The curve is resampled to
// 2N - 1 equispaced arc-length positions and transformed per component;
// since the samples are real only the half-spectrum (gamma_m) for
// m = 0 .. N - 1 is kept, the negative modes being conjugates.  With
// omega = 2 pi / l the curve is
//
//   gamma(t) = gamma_0 + 2 sum_{m>=1} Re(gamma_m e^{i omega m t}),  t in [0, l).

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "wavecurve/dft.hpp"
#include "wavecurve/geometry.hpp"

namespace wavecurve {

struct FourierContour {
  std::array<std::vector<std::complex<double>>, 2> coeffs;  // half-spectrum per component
  double period = 0.0;

  std::size_t modes() const { return coeffs[0].size(); }
  double omega() const { return 2.0 * kPi / period; }
};

inline FourierContour fourier_coefficients(const PolyContour& poly, std::size_t n_modes) {
  if (n_modes < 2) throw std::invalid_argument("fourier_coefficients: need at least 2 modes");
  const double l = arc_length(poly);
  const auto samples = resample_by_arc_length(poly, 2 * n_modes - 1);
  const std::size_t grid = samples.size();
  FourierContour fc;
  fc.period = l;
  for (int s = 0; s < 2; ++s) {
    std::vector<std::complex<double>> x(grid);
    for (std::size_t j = 0; j < grid; ++j) x[j] = s == 0 ? samples[j].x : samples[j].y;
    const auto spec = dft(std::move(x));
    auto& half = fc.coeffs[static_cast<std::size_t>(s)];
    half.resize(n_modes);
    for (std::size_t m = 0; m < n_modes; ++m) half[m] = spec[m] / static_cast<double>(grid);
  }
  return fc;
}

namespace detail {

// Smallest cutoff m0 >= 1 such that the least-squares line through the
// points (m, sum_{k=m0..m} mags[k]) for m = m0 .. N-1 fits with
// root-mean-square residual below delta.  The cumulative sums of a flat
// noise floor are exactly linear, so the fit succeeds right where the
// informative modes stop.
inline std::size_t truncation_cutoff(const std::vector<double>& mags, double delta) {
  const std::size_t n_modes = mags.size();
  for (std::size_t m0 = 1; m0 < n_modes; ++m0) {
    const std::size_t n = n_modes - m0;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, cum = 0.0;
    std::vector<double> ys(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double xi = static_cast<double>(m0 + i);
      cum += mags[m0 + i];
      ys[i] = cum;
      sx += xi;
      sy += cum;
      sxx += xi * xi;
      sxy += xi * cum;
    }
    const double denom = static_cast<double>(n) * sxx - sx * sx;
    double slope = 0.0;
    if (denom != 0.0) slope = (static_cast<double>(n) * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / static_cast<double>(n);
    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = ys[i] - (slope * static_cast<double>(m0 + i) + intercept);
      ssr += r * r;
    }
    if (std::sqrt(ssr / static_cast<double>(n)) < delta) return m0;
  }
  return n_modes - 1;
}

}  // namespace detail

// Zeroes the modes past the point where each component's spectrum decays
// into its noise floor.  Components are judged independently.
inline FourierContour truncate_fourier(const FourierContour& fc, double delta = 0.1) {
  if (delta <= 0.0) throw std::invalid_argument("truncate_fourier: delta must be positive");
  if (fc.modes() < 3) return fc;
  FourierContour out = fc;
  for (auto& half : out.coeffs) {
    std::vector<double> mags(half.size());
    for (std::size_t m = 0; m < half.size(); ++m) mags[m] = std::abs(half[m]);
    const std::size_t cutoff = detail::truncation_cutoff(mags, delta);
    for (std::size_t m = cutoff + 1; m < half.size(); ++m) half[m] = 0.0;
  }
  return out;
}

// Center of mass of the enclosed region via Green's theorem, evaluated
// directly on the coefficient sequences: with the full two-sided spectrum
// G_s and its derivative G'_s, the area integrals reduce to convolutions
// read off at index zero.
inline Point centroid(const FourierContour& fc) {
  const long n = static_cast<long>(fc.modes());
  const double w = fc.omega();
  // two-sided arrays indexed m = -(n-1) .. n-1, stored at m + n - 1
  std::array<std::vector<std::complex<double>>, 2> g, gp;
  for (int s = 0; s < 2; ++s) {
    g[s].resize(static_cast<std::size_t>(2 * n - 1));
    gp[s].resize(static_cast<std::size_t>(2 * n - 1));
    for (long m = -(n - 1); m <= n - 1; ++m) {
      const std::complex<double> c =
          m >= 0 ? fc.coeffs[static_cast<std::size_t>(s)][static_cast<std::size_t>(m)]
                 : std::conj(fc.coeffs[static_cast<std::size_t>(s)][static_cast<std::size_t>(-m)]);
      g[s][static_cast<std::size_t>(m + n - 1)] = c;
      gp[s][static_cast<std::size_t>(m + n - 1)] =
          std::complex<double>(0.0, static_cast<double>(m) * w) * c;
    }
  }
  const auto at = [n](const std::vector<std::complex<double>>& v, long m) {
    return v[static_cast<std::size_t>(m + n - 1)];
  };
  std::complex<double> den = 0.0;
  for (long m = -(n - 1); m <= n - 1; ++m) den += at(g[0], m) * at(gp[1], -m);
  double scale = 0.0;
  for (const auto& c : g[0]) scale += std::abs(c);
  for (const auto& c : gp[1]) scale += std::abs(c);
  if (std::abs(den) < 1e-12 * (1.0 + scale * scale))
    throw std::runtime_error("centroid: degenerate region (zero enclosed area)");

  Point out;
  for (int s = 0; s < 2; ++s) {
    std::complex<double> num = 0.0;
    for (long a = -(n - 1); a <= n - 1; ++a) {
      for (long b = -(n - 1); b <= n - 1; ++b) {
        const long c = -a - b;
        if (c < -(n - 1) || c > n - 1) continue;
        num += at(g[0], a) * at(g[1], b) * at(gp[s], c);
      }
    }
    const double sign = s == 0 ? -1.0 : 1.0;
    const double value = sign * (num / den).real();
    if (s == 0)
      out.x = value;
    else
      out.y = value;
  }
  return out;
}

struct StartOptions {
  // The default rule scores each vertex by arccos of the normalized first
  // coordinate, which cannot tell above-axis from below-axis.  The signed
  // variant scores by the anticlockwise angle in [0, 2 pi) instead, so a
  // vertex just below the axis scores almost 2 pi rather than almost 0.
  bool signed_angle = false;
};

// Cyclic reorder so the curve starts at the vertex whose direction from c
// is closest to "angle zero" (the positive x direction).  Ties keep the
// smallest original index.
inline PolyContour canonical_start(const PolyContour& poly, Point c, StartOptions opts = {}) {
  std::size_t best = poly.size();
  double best_score = 0.0;
  for (std::size_t k = 0; k < poly.size(); ++k) {
    const double dx = poly[k].x - c.x;
    const double dy = poly[k].y - c.y;
    const double r = std::hypot(dx, dy);
    if (r == 0.0) continue;  // the center itself has no direction
    double score;
    if (opts.signed_angle) {
      score = std::atan2(dy, dx);
      if (score < 0.0) score += 2.0 * kPi;
    } else {
      score = std::acos(std::clamp(dx / r, -1.0, 1.0));
    }
    if (best == poly.size() || score < best_score) {
      best = k;
      best_score = score;
    }
  }
  if (best == poly.size())
    throw std::invalid_argument("canonical_start: degenerate contour (all points at the center)");
  PolyContour out(poly.size());
  for (std::size_t k = 0; k < poly.size(); ++k) out[k] = poly[(k + best) % poly.size()];
  return out;
}

inline Point eval_contour_at(const FourierContour& fc, double t) {
  const double w = fc.omega();
  Point p;
  for (int s = 0; s < 2; ++s) {
    const auto& half = fc.coeffs[static_cast<std::size_t>(s)];
    double acc = half[0].real();
    for (std::size_t m = 1; m < half.size(); ++m) {
      const double ph = w * static_cast<double>(m) * t;
      acc += 2.0 * (half[m] * std::complex<double>(std::cos(ph), std::sin(ph))).real();
    }
    if (s == 0)
      p.x = acc;
    else
      p.y = acc;
  }
  return p;
}

inline std::vector<Point> eval_contour(const FourierContour& fc, const std::vector<double>& times) {
  std::vector<Point> out(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) out[i] = eval_contour_at(fc, times[i]);
  return out;
}

}  // namespace wavecurve
