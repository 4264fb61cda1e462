#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace wavecurve {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// Closed polygon: the edge from back() to front() is implied.
using PolyContour = std::vector<Point>;

struct BinaryMask {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> pixels;  // row-major, iy * width + ix, nonzero = foreground

  BinaryMask() = default;
  BinaryMask(std::size_t w, std::size_t h) : width(w), height(h), pixels(w * h, 0) {}

  // Out-of-range coordinates read as background, which closes boundary
  // curves that touch the image edge.
  std::uint8_t at(long ix, long iy) const {
    if (ix < 0 || iy < 0 || ix >= static_cast<long>(width) || iy >= static_cast<long>(height))
      return 0;
    return pixels[static_cast<std::size_t>(iy) * width + static_cast<std::size_t>(ix)];
  }

  void set(std::size_t ix, std::size_t iy, std::uint8_t v) { pixels[iy * width + ix] = v; }

  std::size_t foreground_count() const {
    std::size_t n = 0;
    for (auto p : pixels) n += (p != 0);
    return n;
  }
};

inline double signed_area(const PolyContour& poly) {
  double acc = 0.0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = poly[i];
    const Point& b = poly[(i + 1) % n];
    acc += a.x * b.y - b.x * a.y;
  }
  return 0.5 * acc;
}

// Flips orientation in place if the polygon runs clockwise.  The first
// vertex stays the first vertex either way.
inline void ensure_anticlockwise(PolyContour& poly) {
  if (poly.size() < 3) throw std::invalid_argument("ensure_anticlockwise: need at least 3 points");
  const double area = signed_area(poly);
  if (area == 0.0) throw std::invalid_argument("ensure_anticlockwise: degenerate polygon");
  if (area < 0.0) std::reverse(poly.begin() + 1, poly.end());
}

inline double arc_length(const PolyContour& poly) {
  double acc = 0.0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = poly[i];
    const Point& b = poly[(i + 1) % n];
    acc += std::hypot(b.x - a.x, b.y - a.y);
  }
  return acc;
}

// n points at equal arc-length spacing along the closed polygon, the first
// coinciding with poly[0].
inline PolyContour resample_by_arc_length(const PolyContour& poly, std::size_t n) {
  if (poly.size() < 3) throw std::invalid_argument("resample_by_arc_length: need at least 3 points");
  if (n == 0) throw std::invalid_argument("resample_by_arc_length: need n > 0");
  const std::size_t v = poly.size();
  std::vector<double> cum(v + 1, 0.0);
  for (std::size_t i = 0; i < v; ++i) {
    const Point& a = poly[i];
    const Point& b = poly[(i + 1) % v];
    cum[i + 1] = cum[i] + std::hypot(b.x - a.x, b.y - a.y);
  }
  const double total = cum[v];
  if (total <= 0.0) throw std::invalid_argument("resample_by_arc_length: zero-length contour");
  PolyContour out(n);
  std::size_t edge = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = total * static_cast<double>(i) / static_cast<double>(n);
    while (edge + 1 < v && cum[edge + 1] <= t) ++edge;
    const Point& a = poly[edge];
    const Point& b = poly[(edge + 1) % v];
    const double seg = cum[edge + 1] - cum[edge];
    const double frac = seg > 0.0 ? (t - cum[edge]) / seg : 0.0;
    out[i] = {a.x + frac * (b.x - a.x), a.y + frac * (b.y - a.y)};
  }
  return out;
}

// x-coordinates where the boundary crosses the horizontal line y = y0.
// Each edge counts iff min(ya, yb) <= y0 < max(ya, yb); the half-open rule
// makes vertices on the line contribute exactly once per passing edge pair.
inline std::vector<double> scanline_crossings(const PolyContour& poly, double y0) {
  std::vector<double> xs;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = poly[i];
    const Point& b = poly[(i + 1) % n];
    if ((a.y <= y0 && y0 < b.y) || (b.y <= y0 && y0 < a.y))
      xs.push_back(a.x + (y0 - a.y) * (b.x - a.x) / (b.y - a.y));
  }
  std::sort(xs.begin(), xs.end());
  return xs;
}

// Fills every pixel whose integer center lies strictly inside the polygon
// (even-odd rule).  Centers on the boundary stay background.
inline BinaryMask rasterize_polygon(const PolyContour& poly, std::size_t width,
                                    std::size_t height) {
  if (poly.size() < 3) throw std::invalid_argument("rasterize_polygon: need at least 3 points");
  BinaryMask mask(width, height);
  for (std::size_t iy = 0; iy < height; ++iy) {
    const auto xs = scanline_crossings(poly, static_cast<double>(iy));
    for (std::size_t i = 0; i + 1 < xs.size(); i += 2) {
      const long lo = static_cast<long>(std::floor(xs[i])) + 1;
      const long hi = static_cast<long>(std::ceil(xs[i + 1])) - 1;
      for (long ix = std::max<long>(lo, 0);
           ix <= std::min<long>(hi, static_cast<long>(width) - 1); ++ix)
        mask.set(static_cast<std::size_t>(ix), iy, 1);
    }
  }
  return mask;
}

}  // namespace wavecurve
