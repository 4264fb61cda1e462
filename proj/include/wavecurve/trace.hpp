#pragma once

// Boundary extraction from a binary mask.  The default tracer is marching
// squares at iso-level 1/2: pixels sit at integer coordinates, crossings
// land on edge midpoints, and outer boundaries come out anticlockwise
// because every segment keeps foreground on its left.  A corner-following
// variant (vertices at pixel corners, staircase polygons) sits behind
// TraceOptions::corner_tracing for comparisons against integer tracers.
//
// All vertices live on the half-integer lattice, so doubling coordinates
// gives exact integer keys for stitching.  Cells one step outside the grid
// are scanned too (the exterior reads as background), which closes
// boundaries that touch the image edge.  The two ambiguous checkerboard
// cells keep diagonal foreground pixels separated, matching 4-connected
// foreground; the corner tracer resolves the same situation by always
// taking the sharpest left turn.

#include <cmath>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wavecurve/geometry.hpp"

namespace wavecurve {

struct TraceOptions {
  // Accept a mask with several boundary cycles and return the one
  // enclosing the largest area.  Off by default: several cycles then
  // raise an error instead.
  bool largest_only = false;
  // Follow pixel borders instead of the subpixel iso-contour.
  bool corner_tracing = false;
};

namespace detail {

struct BoundarySegment {
  Point a;
  Point b;
};

// Key on the half-integer lattice: coordinates doubled to integers.
using LatticeKey = std::pair<long, long>;

inline LatticeKey lattice_key(const Point& p) {
  return {static_cast<long>(std::llround(2.0 * p.x)), static_cast<long>(std::llround(2.0 * p.y))};
}

// Chains directed segments into closed cycles.  Vertices can carry several
// outgoing segments (pixel corners where two regions touch diagonally);
// the walk then continues with the sharpest left turn, which keeps each
// boundary hugging its own region.
inline std::vector<PolyContour> stitch_cycles(const std::vector<BoundarySegment>& segments) {
  std::map<LatticeKey, std::vector<std::size_t>> outgoing;
  for (std::size_t i = 0; i < segments.size(); ++i)
    outgoing[lattice_key(segments[i].a)].push_back(i);

  std::vector<bool> used(segments.size(), false);
  std::vector<PolyContour> cycles;
  for (std::size_t s = 0; s < segments.size(); ++s) {
    if (used[s]) continue;
    PolyContour cycle;
    const LatticeKey start = lattice_key(segments[s].a);
    std::size_t cur = s;
    while (true) {
      used[cur] = true;
      cycle.push_back(segments[cur].a);
      const LatticeKey end_key = lattice_key(segments[cur].b);
      if (end_key == start) break;
      const auto it = outgoing.find(end_key);
      if (it == outgoing.end()) throw std::logic_error("stitch_cycles: open chain");
      const double dx_in = segments[cur].b.x - segments[cur].a.x;
      const double dy_in = segments[cur].b.y - segments[cur].a.y;
      std::size_t next = segments.size();
      double best_turn = 0.0;
      for (std::size_t cand : it->second) {
        if (used[cand]) continue;
        const double dx = segments[cand].b.x - segments[cand].a.x;
        const double dy = segments[cand].b.y - segments[cand].a.y;
        const double turn = std::atan2(dx_in * dy - dy_in * dx, dx_in * dx + dy_in * dy);
        if (next == segments.size() || turn > best_turn) {
          next = cand;
          best_turn = turn;
        }
      }
      if (next == segments.size()) throw std::logic_error("stitch_cycles: dead end");
      cur = next;
    }
    cycles.push_back(std::move(cycle));
  }
  return cycles;
}

inline std::vector<BoundarySegment> marching_squares_segments(const BinaryMask& mask) {
  std::vector<BoundarySegment> segs;
  for (long cy = -1; cy < static_cast<long>(mask.height); ++cy) {
    for (long cx = -1; cx < static_cast<long>(mask.width); ++cx) {
      const int code = (mask.at(cx, cy) != 0 ? 1 : 0) | (mask.at(cx + 1, cy) != 0 ? 2 : 0) |
                       (mask.at(cx + 1, cy + 1) != 0 ? 4 : 0) |
                       (mask.at(cx, cy + 1) != 0 ? 8 : 0);
      if (code == 0 || code == 15) continue;
      const double x = static_cast<double>(cx);
      const double y = static_cast<double>(cy);
      const Point bm{x + 0.5, y};        // bottom edge midpoint
      const Point rm{x + 1.0, y + 0.5};  // right
      const Point tm{x + 0.5, y + 1.0};  // top
      const Point lm{x, y + 0.5};        // left
      switch (code) {
        case 1: segs.push_back({bm, lm}); break;
        case 2: segs.push_back({rm, bm}); break;
        case 3: segs.push_back({rm, lm}); break;
        case 4: segs.push_back({tm, rm}); break;
        case 5:  // checkerboard: corners stay separated
          segs.push_back({bm, lm});
          segs.push_back({tm, rm});
          break;
        case 6: segs.push_back({tm, bm}); break;
        case 7: segs.push_back({tm, lm}); break;
        case 8: segs.push_back({lm, tm}); break;
        case 9: segs.push_back({bm, tm}); break;
        case 10:  // checkerboard
          segs.push_back({rm, bm});
          segs.push_back({lm, tm});
          break;
        case 11: segs.push_back({rm, tm}); break;
        case 12: segs.push_back({lm, rm}); break;
        case 13: segs.push_back({bm, rm}); break;
        case 14: segs.push_back({lm, bm}); break;
        default: break;
      }
    }
  }
  return segs;
}

// Every exposed pixel side becomes one unit segment along the pixel border
// (pixel (ix, iy) owns the square [ix - 1/2, ix + 1/2]^2), again oriented
// with foreground on the left.
inline std::vector<BoundarySegment> pixel_border_segments(const BinaryMask& mask) {
  std::vector<BoundarySegment> segs;
  for (long iy = 0; iy < static_cast<long>(mask.height); ++iy) {
    for (long ix = 0; ix < static_cast<long>(mask.width); ++ix) {
      if (mask.at(ix, iy) == 0) continue;
      const double x = static_cast<double>(ix);
      const double y = static_cast<double>(iy);
      if (mask.at(ix, iy - 1) == 0) segs.push_back({{x - 0.5, y - 0.5}, {x + 0.5, y - 0.5}});
      if (mask.at(ix + 1, iy) == 0) segs.push_back({{x + 0.5, y - 0.5}, {x + 0.5, y + 0.5}});
      if (mask.at(ix, iy + 1) == 0) segs.push_back({{x + 0.5, y + 0.5}, {x - 0.5, y + 0.5}});
      if (mask.at(ix - 1, iy) == 0) segs.push_back({{x - 0.5, y + 0.5}, {x - 0.5, y - 0.5}});
    }
  }
  return segs;
}

}  // namespace detail

inline PolyContour trace_boundary(const BinaryMask& mask, TraceOptions opts = {}) {
  if (mask.foreground_count() == 0)
    throw std::runtime_error("trace_boundary: no region in mask");

  const auto segs = opts.corner_tracing ? detail::pixel_border_segments(mask)
                                        : detail::marching_squares_segments(mask);
  const auto cycles = detail::stitch_cycles(segs);

  if (cycles.size() > 1 && !opts.largest_only)
    throw std::runtime_error(
        "trace_boundary: ambiguous region (multiple boundary cycles; set largest_only to keep "
        "the biggest)");

  std::size_t best = 0;
  double best_area = -1.0;
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    const double a = std::fabs(signed_area(cycles[i]));
    if (a > best_area) {
      best_area = a;
      best = i;
    }
  }
  return cycles[best];
}

}  // namespace wavecurve
