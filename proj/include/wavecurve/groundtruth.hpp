#pragma once

// Mask-to-record pipeline: trace the region boundary, normalize the contour
// (orientation, start point, centering, unit period), initialize wavelet
// approximation coefficients at the finest level, run the pyramid down to the
// coarsest, threshold the details, and store the reconstruction sequence.
// Also the data-driven selection of the level pair (j1, j2) from a training
// collection.

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wavecurve/filters.hpp"
#include "wavecurve/fourier_contour.hpp"
#include "wavecurve/geometry.hpp"
#include "wavecurve/init_coeffs.hpp"
#include "wavecurve/pyramid.hpp"
#include "wavecurve/trace.hpp"

namespace wavecurve {

struct PipelineConfig {
  std::string wavelet = "db8";
  int j0 = 4;
  int j1 = 6;
  int j2 = 8;
  std::size_t fourier_N = 64;
  double eps = 5e-3;    // detail threshold
  double delta = 0.1;   // Fourier truncation threshold
};

inline void validate(const PipelineConfig& cfg) {
  if (cfg.j0 < 1 || cfg.j2 > 30 || !(cfg.j0 <= cfg.j1 && cfg.j1 <= cfg.j2))
    throw std::invalid_argument("pipeline config: need 1 <= j0 <= j1 <= j2 <= 30");
  if (cfg.fourier_N < 2) throw std::invalid_argument("pipeline config: fourier_N must be >= 2");
  if (cfg.eps < 0.0) throw std::invalid_argument("pipeline config: eps must be >= 0");
  if (cfg.delta <= 0.0) throw std::invalid_argument("pipeline config: delta must be > 0");
  bank_from_name(cfg.wavelet);
}

struct GroundTruthRecord {
  std::string id;
  std::string wavelet;
  int j0 = 0;
  int j1 = 0;
  int j2 = 0;
  int presence = 0;
  double arc_length = 0.0;      // original contour length in pixels
  Point center_shift{0.0, 0.0};  // subtracted from the mean mode before encoding
  // approx[s] holds levels j0..j2 in order; detail[s] holds thresholded
  // details for levels j0..j1-1.  Empty when presence == 0.
  std::array<std::vector<PeriodicSignal>, 2> approx;
  std::array<std::vector<PeriodicSignal>, 2> detail;
};

// Start-normalized, centered, unit-period Fourier description of a traced
// boundary.  The region's own centroid anchors the start-point rule; the
// dataset-wide `center` is subtracted from the mean mode afterwards so the
// stored curves live in a common frame.  Rescaling the parameter to period 1
// leaves the coefficients (and hence the curve) unchanged.
inline FourierContour canonical_fourier(const PolyContour& traced, const PipelineConfig& cfg,
                                        Point center, double* out_arc_length = nullptr) {
  PolyContour poly = traced;
  ensure_anticlockwise(poly);
  if (out_arc_length) *out_arc_length = arc_length(poly);
  FourierContour fc = truncate_fourier(fourier_coefficients(poly, cfg.fourier_N), cfg.delta);
  const Point c = centroid(fc);
  poly = canonical_start(poly, c);
  fc = truncate_fourier(fourier_coefficients(poly, cfg.fourier_N), cfg.delta);
  fc.coeffs[0][0] -= center.x;
  fc.coeffs[1][0] -= center.y;
  fc.period = 1.0;
  return fc;
}

namespace detail {

inline void threshold_in_place(PeriodicSignal& d, double eps) {
  for (double& v : d.values())
    if (std::fabs(v) < eps) v = 0.0;
}

inline GroundTruthRecord absence_record(std::string id, const PipelineConfig& cfg, Point center) {
  GroundTruthRecord rec;
  rec.id = std::move(id);
  rec.wavelet = cfg.wavelet;
  rec.j0 = cfg.j0;
  rec.j1 = cfg.j1;
  rec.j2 = cfg.j2;
  rec.presence = 0;
  rec.center_shift = center;
  return rec;
}

}  // namespace detail

inline GroundTruthRecord build_record(const std::string& id, const PolyContour& traced,
                                      const PipelineConfig& cfg, Point center) {
  validate(cfg);
  try {
    GroundTruthRecord rec = detail::absence_record(id, cfg, center);
    rec.presence = 1;
    const FourierContour fc = canonical_fourier(traced, cfg, center, &rec.arc_length);
    const FilterBank bank = bank_from_name(cfg.wavelet);
    const auto init = init_approx_coeffs(fc, bank, InitConfig{.level = cfg.j2});
    for (int s = 0; s < 2; ++s) {
      auto& approx = rec.approx[static_cast<std::size_t>(s)];
      auto& details = rec.detail[static_cast<std::size_t>(s)];
      if (cfg.j0 == cfg.j2) {
        approx.push_back(init[static_cast<std::size_t>(s)]);
        continue;
      }
      auto dec = decompose(init[static_cast<std::size_t>(s)], bank, cfg.j2, cfg.j0);
      for (auto& d : dec.details) detail::threshold_in_place(d, cfg.eps);
      approx.push_back(dec.coarsest);
      for (int lvl = cfg.j0 + 1; lvl <= cfg.j2; ++lvl) {
        const auto& d = dec.details[static_cast<std::size_t>(lvl - 1 - cfg.j0)];
        approx.push_back(reconstruct_step(approx.back(), lvl <= cfg.j1 ? &d : nullptr, bank));
      }
      details.assign(dec.details.begin(), dec.details.begin() + (cfg.j1 - cfg.j0));
    }
    return rec;
  } catch (const std::exception& e) {
    throw std::runtime_error(id + ": " + e.what());
  }
}

inline GroundTruthRecord build_record(const std::string& id, const BinaryMask& mask,
                                      const PipelineConfig& cfg, Point center,
                                      TraceOptions trace_opts = {}) {
  validate(cfg);
  if (mask.foreground_count() == 0) return detail::absence_record(id, cfg, center);
  try {
    return build_record(id, trace_boundary(mask, trace_opts), cfg, center);
  } catch (const std::exception& e) {
    std::string msg = e.what();
    if (msg.compare(0, id.size() + 2, id + ": ") == 0) throw;  // already tagged
    throw std::runtime_error(id + ": " + msg);
  }
}

// Curve samples encoded by the record's finest stored level: coefficients
// approximate 2^{-j/2} times the curve points on the dyadic grid, and the
// center shift maps them back to image coordinates.
inline PolyContour record_curve(const GroundTruthRecord& rec) {
  if (!rec.presence || rec.approx[0].empty())
    throw std::invalid_argument("record_curve: record carries no coefficients");
  const auto& ax = rec.approx[0].back();
  const auto& ay = rec.approx[1].back();
  const double scale = std::pow(2.0, 0.5 * rec.j2);
  PolyContour out;
  out.reserve(ax.size());
  for (long k = ax.first_index(); k <= ax.last_index(); ++k)
    out.push_back({scale * ax.at(k) + rec.center_shift.x,
                   scale * ay.at(k) + rec.center_shift.y});
  return out;
}

// Mean of the per-contour region centroids; anchors the common frame.
inline Point average_midpoint(const std::vector<PolyContour>& contours,
                              std::size_t fourier_N = 64) {
  if (contours.empty())
    throw std::invalid_argument("average_midpoint: need at least one contour");
  Point acc{0.0, 0.0};
  for (const auto& poly : contours) {
    const Point c = centroid(fourier_coefficients(poly, fourier_N));
    acc.x += c.x;
    acc.y += c.y;
  }
  acc.x /= static_cast<double>(contours.size());
  acc.y /= static_cast<double>(contours.size());
  return acc;
}

struct LevelSelection {
  int j1 = 0;
  int j2 = 0;
  std::vector<double> detail_maxima;  // worst |d| per level, j0..max_level-1
  std::vector<double> endpoint_gaps;  // worst window-end gap per level, j0..max_level
};

// Data-driven level choice over a training collection of canonical contours.
// j1: smallest level above j0 from which on every detail level stays below
// eps for every sample.  j2: smallest level >= j1 at which the gap between
// the curve points at the two ends of the covered parameter window
// [-1/2, 1/2 - 2^{-j}] is within pixel_tol for every sample.
inline LevelSelection select_levels(const std::vector<FourierContour>& contours,
                                    const FilterBank& bank, int j0, double eps,
                                    double pixel_tol, int max_level = 10) {
  if (contours.empty()) throw std::invalid_argument("select_levels: empty training set");
  if (j0 < 1 || max_level <= j0 + 1 || max_level > 30)
    throw std::invalid_argument("select_levels: need 1 <= j0 and j0+1 < max_level <= 30");
  LevelSelection sel;
  sel.detail_maxima.assign(static_cast<std::size_t>(max_level - j0), 0.0);
  sel.endpoint_gaps.assign(static_cast<std::size_t>(max_level - j0 + 1), 0.0);
  for (const auto& fc : contours) {
    const auto init = init_approx_coeffs(fc, bank, InitConfig{.level = max_level});
    for (int s = 0; s < 2; ++s) {
      const auto dec = decompose(init[static_cast<std::size_t>(s)], bank, max_level, j0);
      for (std::size_t i = 0; i < dec.details.size(); ++i)
        for (double v : dec.details[i].values())
          sel.detail_maxima[i] = std::max(sel.detail_maxima[i], std::fabs(v));
    }
    for (int j = j0; j <= max_level; ++j) {
      const Point a = eval_contour_at(fc, -0.5);
      const Point b = eval_contour_at(fc, 0.5 - std::ldexp(1.0, -j));
      sel.endpoint_gaps[static_cast<std::size_t>(j - j0)] =
          std::max(sel.endpoint_gaps[static_cast<std::size_t>(j - j0)], std::hypot(a.x - b.x, a.y - b.y));
    }
  }
  int j1 = -1;
  for (int cand = j0 + 1; cand < max_level; ++cand) {
    bool ok = true;
    for (int v = cand; v < max_level && ok; ++v)
      ok = sel.detail_maxima[static_cast<std::size_t>(v - j0)] < eps;
    if (ok) { j1 = cand; break; }
  }
  if (j1 < 0) {
    std::ostringstream os;
    os << "select_levels: no level up to " << max_level
       << " meets the detail rule; worst |d| per level from " << j0 << ":";
    for (double v : sel.detail_maxima) os << ' ' << v;
    throw std::runtime_error(os.str());
  }
  sel.j1 = j1;
  int j2 = -1;
  for (int cand = j1; cand <= max_level; ++cand)
    if (sel.endpoint_gaps[static_cast<std::size_t>(cand - j0)] <= pixel_tol) { j2 = cand; break; }
  if (j2 < 0) {
    std::ostringstream os;
    os << "select_levels: no level up to " << max_level
       << " meets the endpoint rule; worst gap at " << max_level << " is "
       << sel.endpoint_gaps.back();
    throw std::runtime_error(os.str());
  }
  sel.j2 = j2;
  return sel;
}

}  // namespace wavecurve
