#pragma once

// Accuracy measures between closed curves and between coefficient vectors.
// Region overlap (dice) integrates even-odd membership on a refined pixel
// grid over the joint bounding box; boundary distance (hausdorff) compares
// dense arc-length resamplings and reports the chord-length error bound
// alongside; coefficient errors are plain Euclidean norms, which equal the
// L2 curve distances by orthonormality of the basis.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wavecurve/geometry.hpp"
#include "wavecurve/periodic_signal.hpp"

namespace wavecurve {

namespace detail {

// Column intervals [begin, end) of refined-cell centers x = xmin + (i+1/2)h
// lying strictly inside the even-odd spans of a crossing list.
inline std::vector<std::pair<long, long>> crossing_columns(const std::vector<double>& xs,
                                                          double xmin, double h, long nx) {
  std::vector<std::pair<long, long>> out;
  for (std::size_t t = 0; t + 1 < xs.size(); t += 2) {
    long lo = static_cast<long>(std::floor((xs[t] - xmin) / h - 0.5)) + 1;
    long hi = static_cast<long>(std::ceil((xs[t + 1] - xmin) / h - 0.5));
    lo = std::max(lo, 0L);
    hi = std::min(hi, nx);
    if (lo < hi) out.emplace_back(lo, hi);
  }
  return out;
}

inline long interval_count(const std::vector<std::pair<long, long>>& v) {
  long acc = 0;
  for (const auto& [b, e] : v) acc += e - b;
  return acc;
}

inline long interval_overlap(const std::vector<std::pair<long, long>>& a,
                             const std::vector<std::pair<long, long>>& b) {
  long acc = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const long lo = std::max(a[i].first, b[j].first);
    const long hi = std::min(a[i].second, b[j].second);
    if (lo < hi) acc += hi - lo;
    if (a[i].second < b[j].second)
      ++i;
    else
      ++j;
  }
  return acc;
}

}  // namespace detail

inline double dice(const PolyContour& a, const PolyContour& b, int supersample = 4) {
  if (supersample < 1) throw std::invalid_argument("dice: supersample must be >= 1");
  if (a.size() < 3 || b.size() < 3) throw std::invalid_argument("dice: need closed polygons");
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = xmax;
  for (const auto* poly : {&a, &b}) {
    for (const auto& p : *poly) {
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymin = std::min(ymin, p.y);
      ymax = std::max(ymax, p.y);
    }
  }
  const double h = 1.0 / static_cast<double>(supersample);
  const long nx = std::max(1L, static_cast<long>(std::ceil((xmax - xmin) / h)));
  const long ny = std::max(1L, static_cast<long>(std::ceil((ymax - ymin) / h)));
  long count_a = 0, count_b = 0, count_both = 0;
  for (long j = 0; j < ny; ++j) {
    const double y = ymin + (static_cast<double>(j) + 0.5) * h;
    const auto cols_a = detail::crossing_columns(scanline_crossings(a, y), xmin, h, nx);
    const auto cols_b = detail::crossing_columns(scanline_crossings(b, y), xmin, h, nx);
    count_a += detail::interval_count(cols_a);
    count_b += detail::interval_count(cols_b);
    count_both += detail::interval_overlap(cols_a, cols_b);
  }
  if (count_a + count_b == 0) return 1.0;  // both degenerate: identical nothing
  return 2.0 * static_cast<double>(count_both) / static_cast<double>(count_a + count_b);
}

struct HausdorffResult {
  double distance = 0.0;
  // The reported value can differ from the true boundary-to-boundary
  // distance by at most half the longer resampling chord.
  double chord_bound = 0.0;
};

inline HausdorffResult hausdorff(const PolyContour& a, const PolyContour& b,
                                 std::size_t samples = 1024) {
  if (samples < 3) throw std::invalid_argument("hausdorff: need at least 3 samples");
  const auto pa = resample_by_arc_length(a, samples);
  const auto pb = resample_by_arc_length(b, samples);
  std::vector<double> min_to_a(samples, std::numeric_limits<double>::infinity());
  double max_min_ab = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < samples; ++j) {
      const double dx = pa[i].x - pb[j].x;
      const double dy = pa[i].y - pb[j].y;
      const double d2 = dx * dx + dy * dy;
      best = std::min(best, d2);
      min_to_a[j] = std::min(min_to_a[j], d2);
    }
    max_min_ab = std::max(max_min_ab, best);
  }
  double max_min_ba = 0.0;
  for (double d2 : min_to_a) max_min_ba = std::max(max_min_ba, d2);
  HausdorffResult r;
  r.distance = std::sqrt(std::max(max_min_ab, max_min_ba));
  r.chord_bound =
      std::max(arc_length(a), arc_length(b)) / (2.0 * static_cast<double>(samples));
  return r;
}

inline double l2_error(const PeriodicSignal& f, const PeriodicSignal& a) {
  if (f.size() != a.size()) throw std::invalid_argument("l2_error: length mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double d = f.values()[i] - a.values()[i];
    acc += d * d;
  }
  return std::sqrt(acc);
}

inline double cross_entropy(double p, int r) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("cross_entropy: p must lie in (0,1)");
  if (r != 0 && r != 1) throw std::invalid_argument("cross_entropy: presence must be 0 or 1");
  return -(r == 1 ? std::log(p) : std::log(1.0 - p));
}

struct CoeffPair {
  PeriodicSignal predicted;
  PeriodicSignal reference;
};

// Presence cross-entropy plus the coefficient errors of the supplied pairs
// (the training objective uses the four pairs: both components at the
// coarsest and finest levels).
inline double loss(double p, int r, const std::vector<CoeffPair>& pairs, double w = 1.0) {
  if (w <= 0.0) throw std::invalid_argument("loss: weight must be positive");
  double acc = w * cross_entropy(p, r);
  for (const auto& pair : pairs) acc += l2_error(pair.predicted, pair.reference);
  return acc;
}

struct MetricReport {
  double dice = 0.0;
  double hausdorff = 0.0;
  double hausdorff_chord_bound = 0.0;
  double l2_s1 = 0.0;
  double l2_s2 = 0.0;
  std::optional<double> loss;
};

}  // namespace wavecurve
