#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "wavecurve/dft.hpp"

// Orthonormal Daubechies filter banks.  Coefficients are computed at
// construction time by spectral factorisation of the Daubechies polynomial,
// carried out in extended precision so the rounded double filters satisfy the
// orthonormality identities to ~1e-14.  Supported orders: p in {1,2,4,8,16}.

namespace wavecurve {

class convergence_error : public std::runtime_error {
 public:
  convergence_error(const std::string& msg, double residual)
      : std::runtime_error(msg + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

namespace detail {

using cld = std::complex<long double>;

// Durand-Kerner iteration for all roots of a monic polynomial given by its
// coefficients c[0] + c[1] x + ... + c[d] x^d, c[d] == 1.
inline std::vector<cld> all_roots(const std::vector<long double>& c) {
  const std::size_t d = c.size() - 1;
  std::vector<cld> z(d);
  const cld seed(0.4L, 0.9L);
  cld acc(1.0L, 0.0L);
  for (std::size_t i = 0; i < d; ++i) {
    acc *= seed;
    z[i] = acc;
  }
  auto eval = [&](cld x) {
    cld r(0.0L, 0.0L);
    for (std::size_t k = c.size(); k-- > 0;) r = r * x + c[k];
    return r;
  };
  for (int iter = 0; iter < 500; ++iter) {
    long double worst = 0.0L;
    for (std::size_t i = 0; i < d; ++i) {
      cld denom(1.0L, 0.0L);
      for (std::size_t j = 0; j < d; ++j)
        if (j != i) denom *= z[i] - z[j];
      const cld delta = eval(z[i]) / denom;
      z[i] -= delta;
      worst = std::max(worst, std::abs(delta));
    }
    if (worst < 1e-18L) return z;
  }
  throw convergence_error("root finding for filter construction did not settle", 0.0);
}

inline std::vector<long double> multiply_poly(const std::vector<long double>& a,
                                              const std::vector<long double>& b) {
  std::vector<long double> out(a.size() + b.size() - 1, 0.0L);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// Minimum-phase spectral factor of the degree-(p-1) Daubechies polynomial,
// multiplied by the binomial part ((1+z)/2)^p and normalised to sum sqrt(2).
inline std::vector<double> daubechies_lowpass(int p) {
  const long double sqrt2 = std::sqrt(2.0L);
  if (p == 1) {
    const double s = static_cast<double>(1.0L / sqrt2);
    return {s, s};
  }
  // P(y) = sum_{k<p} binom(p-1+k, k) y^k
  std::vector<long double> poly(static_cast<std::size_t>(p));
  poly[0] = 1.0L;
  for (int k = 1; k < p; ++k)
    poly[static_cast<std::size_t>(k)] =
        poly[static_cast<std::size_t>(k - 1)] * static_cast<long double>(p - 1 + k) /
        static_cast<long double>(k);
  const long double lead = poly.back();
  for (auto& c : poly) c /= lead;
  const std::vector<cld> yroots = all_roots(poly);

  // Each root y of P maps to a reciprocal pair z, 1/z via y = (2 - z - 1/z)/4;
  // keeping |z| <= 1 picks the minimum-phase factor.
  std::vector<long double> factor{1.0L};
  for (const cld& y : yroots) {
    if (y.imag() < -1e-12L) continue;  // conjugate handled with its partner
    const cld b = cld(1.0L, 0.0L) - 2.0L * y;
    cld z = b + std::sqrt(b * b - cld(1.0L, 0.0L));
    if (std::abs(z) > 1.0L) z = cld(1.0L, 0.0L) / z;
    if (y.imag() > 1e-12L) {
      factor = multiply_poly(
          factor, {std::norm(z), -2.0L * z.real(), 1.0L});
    } else {
      factor = multiply_poly(factor, {-z.real(), 1.0L});
    }
  }

  std::vector<long double> binom{1.0L};
  for (int k = 0; k < p; ++k) binom = multiply_poly(binom, {1.0L, 1.0L});
  std::vector<long double> full = multiply_poly(binom, factor);

  long double sum = 0.0L;
  for (auto c : full) sum += c;
  std::vector<double> h(full.size());
  for (std::size_t k = 0; k < full.size(); ++k)
    h[k] = static_cast<double>(full[k] * sqrt2 / sum);

  // Deterministic orientation: minimum phase is front-loaded in energy.
  double front = 0.0, back = 0.0;
  for (std::size_t k = 0; k < h.size(); ++k)
    (k < h.size() / 2 ? front : back) += h[k] * h[k];
  if (back > front) std::reverse(h.begin(), h.end());
  return h;
}

}  // namespace detail

// Analysis/synthesis filter pair for one Daubechies order.
//
// lowpass() holds h_k for k = 0..2p-1.  highpass() holds g_k for
// k = 2-2p..1 (see highpass_first_index()), built from the mirror relation
// g_k = (-1)^{k-1} h_{1-k}.  support() is the scaling-function support bound
// beta = 2p-1.
class FilterBank {
 public:
  static FilterBank daubechies(int p) {
    if (p != 1 && p != 2 && p != 4 && p != 8 && p != 16)
      throw std::invalid_argument("unsupported filter order db" + std::to_string(p));
    FilterBank bank;
    bank.p_ = p;
    bank.h_ = detail::daubechies_lowpass(p);
    bank.g_.resize(bank.h_.size());
    // g index k runs 2-2p..1; stored ascending.
    for (int k = 2 - 2 * p; k <= 1; ++k) {
      const double sign = ((k - 1) % 2 == 0) ? 1.0 : -1.0;
      bank.g_[static_cast<std::size_t>(k - (2 - 2 * p))] =
          sign * bank.h_[static_cast<std::size_t>(1 - k)];
    }
    bank.validate();
    return bank;
  }

  int order() const noexcept { return p_; }
  int support() const noexcept { return 2 * p_ - 1; }
  std::string name() const { return "db" + std::to_string(p_); }

  const std::vector<double>& lowpass() const noexcept { return h_; }
  const std::vector<double>& highpass() const noexcept { return g_; }
  int highpass_first_index() const noexcept { return 2 - 2 * p_; }

 private:
  FilterBank() = default;

  void validate() const {
    const double tol = 1e-12;
    double sum = 0.0;
    for (double v : h_) sum += v;
    if (std::abs(sum - std::sqrt(2.0)) > tol)
      throw std::runtime_error("filter bank failed the sum rule");
    for (std::size_t m = 0; m < h_.size() / 2; ++m) {
      double dot = 0.0;
      for (std::size_t k = 0; k + 2 * m < h_.size(); ++k) dot += h_[k] * h_[k + 2 * m];
      const double want = (m == 0) ? 1.0 : 0.0;
      if (std::abs(dot - want) > tol)
        throw std::runtime_error("filter bank failed shift orthonormality");
    }
  }

  int p_ = 0;
  std::vector<double> h_;
  std::vector<double> g_;
};

// Lookup by the conventional name ("db1", "db2", ...).
inline FilterBank bank_from_name(const std::string& name) {
  if (name.size() > 2 && name.compare(0, 2, "db") == 0) {
    int p = 0;
    for (std::size_t i = 2; i < name.size(); ++i) {
      if (name[i] < '0' || name[i] > '9') { p = -1; break; }
      p = p * 10 + (name[i] - '0');
    }
    if (p > 0) return FilterBank::daubechies(p);
  }
  throw std::invalid_argument("unknown filter bank '" + name + "'");
}

// H(xi) = 2^{-1/2} sum_k h_k exp(-2*pi*i*xi*k); H(0) = 1, H(1/2) = 0.
inline std::complex<double> refinement_mask(const FilterBank& bank, double xi) {
  std::complex<double> acc(0.0, 0.0);
  const auto& h = bank.lowpass();
  for (std::size_t k = 0; k < h.size(); ++k)
    acc += h[k] * std::polar(1.0, -2.0 * kPi * xi * static_cast<double>(k));
  return acc / std::sqrt(2.0);
}

// Scaling function phi sampled on the dyadic grid i/2^depth, i = 0..beta*2^depth,
// by cascade iteration from the unit box.  Stops when successive iterates agree
// to 1e-8 in max norm; reports non-convergence past the hard cap.
inline std::vector<double> scaling_function_samples(const FilterBank& bank, int depth) {
  if (depth < 0 || depth > 24) throw std::invalid_argument("unusable cascade depth");
  const int beta = bank.support();
  const std::size_t step = std::size_t{1} << depth;
  const std::size_t n = static_cast<std::size_t>(beta) * step + 1;
  std::vector<double> cur(n, 0.0), next(n, 0.0);
  for (std::size_t i = 0; i < n && i < step; ++i) cur[i] = 1.0;  // box on [0,1)

  const auto& h = bank.lowpass();
  const double sqrt2 = std::sqrt(2.0);
  const double tol = 1e-8;
  const int cap = 60;
  double residual = 0.0;
  for (int iter = 0; iter < cap; ++iter) {
    residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      const long long two_i = 2 * static_cast<long long>(i);
      for (std::size_t k = 0; k < h.size(); ++k) {
        const long long src = two_i - static_cast<long long>(k) * static_cast<long long>(step);
        if (src >= 0 && src < static_cast<long long>(n))
          acc += h[k] * cur[static_cast<std::size_t>(src)];
      }
      acc *= sqrt2;
      next[i] = acc;
      residual = std::max(residual, std::abs(acc - cur[i]));
    }
    cur.swap(next);
    if (residual < tol) return cur;
  }
  throw convergence_error("cascade iteration for " + bank.name() + " did not converge", residual);
}

}  // namespace wavecurve
