#pragma once

// One level of the periodic filter-bank pyramid is
//   approx_j  = downsample(a_{j+1} * reversed(h))
//   detail_j  = downsample(a_{j+1} * reversed(g))
//   a_{j+1}   = upsample(approx_j) * h + upsample(detail_j) * g
// where * is circular convolution on the two-sided index set.  A signal
// at level j has 2^j samples, so decomposition bottoms out at level 1.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "wavecurve/circular_convolution.hpp"
#include "wavecurve/filters.hpp"
#include "wavecurve/periodic_signal.hpp"

namespace wavecurve {

namespace detail {

// Places taps[i] at logical index first + i inside a window of the given
// radius; everything else is zero.
inline TwoSidedFilter embed_taps(const std::vector<double>& taps, long first, long radius) {
  std::vector<double> window(static_cast<std::size_t>(2 * radius - 1), 0.0);
  for (std::size_t i = 0; i < taps.size(); ++i) {
    const long k = first + static_cast<long>(i);
    if (k <= -radius || k >= radius) throw std::logic_error("filter taps overflow window");
    window[static_cast<std::size_t>(k + radius - 1)] = taps[i];
  }
  return TwoSidedFilter(std::move(window));
}

inline std::vector<double> reversed(std::vector<double> v) {
  return {v.rbegin(), v.rend()};
}

}  // namespace detail

// The four filters of the bank, embedded in symmetric windows of radius 2p
// so both analysis and synthesis use one convolution routine.
inline TwoSidedFilter synthesis_lowpass(const FilterBank& bank) {
  return detail::embed_taps(bank.lowpass(), 0, 2 * bank.order());
}

inline TwoSidedFilter synthesis_highpass(const FilterBank& bank) {
  return detail::embed_taps(bank.highpass(), bank.highpass_first_index(), 2 * bank.order());
}

inline TwoSidedFilter analysis_lowpass(const FilterBank& bank) {
  // reversed(h)_k = h_{-k}, supported on 1 - 2p .. 0
  return detail::embed_taps(detail::reversed(bank.lowpass()),
                            1 - static_cast<long>(bank.lowpass().size()), 2 * bank.order());
}

inline TwoSidedFilter analysis_highpass(const FilterBank& bank) {
  // reversed(g)_k = g_{-k}, supported on -1 .. 2p - 2
  const long last = bank.highpass_first_index() + static_cast<long>(bank.highpass().size()) - 1;
  return detail::embed_taps(detail::reversed(bank.highpass()), -last, 2 * bank.order());
}

struct DecomposeResult {
  PeriodicSignal approx;
  PeriodicSignal detail;
};

inline DecomposeResult decompose_step(const PeriodicSignal& a, const FilterBank& bank) {
  if (a.size() < 4) throw std::invalid_argument("decompose_step: signal too short to halve");
  return {downsample(circular_convolve(a, analysis_lowpass(bank))),
          downsample(circular_convolve(a, analysis_highpass(bank)))};
}

// detail may be null: reconstruction from an approximation alone drops the
// second branch (equivalently, all-zero details).
inline PeriodicSignal reconstruct_step(const PeriodicSignal& approx, const PeriodicSignal* detail,
                                       const FilterBank& bank) {
  PeriodicSignal out = circular_convolve(upsample(approx), synthesis_lowpass(bank));
  if (detail != nullptr) {
    if (detail->size() != approx.size())
      throw std::invalid_argument("reconstruct_step: approx/detail length mismatch");
    const PeriodicSignal high = circular_convolve(upsample(*detail), synthesis_highpass(bank));
    for (std::size_t i = 0; i < out.size(); ++i) out.values()[i] += high.values()[i];
  }
  return out;
}

// Full analysis from top_level down to bottom_level.  details[i] holds the
// detail band at level bottom_level + i.
struct PyramidDecomposition {
  int top_level = 0;
  int bottom_level = 0;
  PeriodicSignal coarsest;
  std::vector<PeriodicSignal> details;
};

inline PyramidDecomposition decompose(const PeriodicSignal& a, const FilterBank& bank,
                                      int top_level, int bottom_level) {
  if (bottom_level < 1 || bottom_level >= top_level || top_level > 30)
    throw std::invalid_argument("decompose: need 1 <= bottom_level < top_level <= 30");
  if (a.size() != (std::size_t{1} << top_level))
    throw std::invalid_argument("decompose: signal length does not match top_level");
  PyramidDecomposition out{top_level, bottom_level, a, {}};
  out.details.resize(static_cast<std::size_t>(top_level - bottom_level),
                     PeriodicSignal::zeros(1));
  for (int j = top_level - 1; j >= bottom_level; --j) {
    auto step = decompose_step(out.coarsest, bank);
    out.coarsest = std::move(step.approx);
    out.details[static_cast<std::size_t>(j - bottom_level)] = std::move(step.detail);
  }
  return out;
}

inline PeriodicSignal reconstruct(const PyramidDecomposition& dec, const FilterBank& bank) {
  PeriodicSignal a = dec.coarsest;
  for (int j = dec.bottom_level; j < dec.top_level; ++j)
    a = reconstruct_step(a, &dec.details[static_cast<std::size_t>(j - dec.bottom_level)], bank);
  return a;
}

}  // namespace wavecurve
