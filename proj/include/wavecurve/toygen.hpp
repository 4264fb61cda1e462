#pragma once

// Random hypocycloid dataset: cusped closed curves under random rotation,
// scaling and shift, sampled to 512-point polygons and rasterized onto a
// 320 x 320 canvas.
//
// Reproducibility contract: every sample derives from one 64-bit seed via
// mt19937_64, and the draw order is fixed as
//   r1    <- 3 + (next() & 3)
//   theta <- -pi/2 + pi * u01
//   q1    <- -80 + 160 * u01
//   q2    <- -80 + 160 * u01
//   kappa <- 10 + 10 * u01
// with u01 = (next() >> 11) * 2^-53, one generator call each.  Draws whose
// curve leaves the canvas are discarded and redrawn from the same stream,
// so equal seeds give bit-identical samples on every platform.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>

#include "wavecurve/dft.hpp"
#include "wavecurve/geometry.hpp"

namespace wavecurve {

struct ToyParams {
  int r1 = 3;          // cusp count
  double theta = 0.0;  // rotation, radians
  double q1 = 0.0;     // shift off canvas center, pixels
  double q2 = 0.0;
  double kappa = 10.0;  // scale
};

struct ToySample {
  std::uint64_t seed = 0;
  ToyParams params;
  PolyContour polygon;
  BinaryMask mask;
  int rejected = 0;  // draws discarded before this one stayed in-canvas
};

struct ToyOptions {
  std::size_t points = 512;
  std::size_t canvas = 320;
  // The source formula's display applies the scale to the shifted curve,
  // kappa * (R eta + center), which moves curves far off canvas; default
  // scales the curve only.
  bool literal_scaling = false;
  int max_redraws = 4096;
};

inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Stateless per-record seeding: a splitmix64-style mix of the dataset seed
// and the record id, so records are independent and order-insensitive.
inline std::uint64_t record_seed(std::uint64_t dataset_seed, std::uint64_t id) {
  std::uint64_t z = dataset_seed + 0x9e3779b97f4a7c15ULL * (id + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline ToyParams draw_toy_params(std::mt19937_64& rng) {
  ToyParams p;
  p.r1 = 3 + static_cast<int>(rng() & 3);
  p.theta = -kPi / 2.0 + kPi * uniform01(rng);
  p.q1 = -80.0 + 160.0 * uniform01(rng);
  p.q2 = -80.0 + 160.0 * uniform01(rng);
  p.kappa = 10.0 + 10.0 * uniform01(rng);
  return p;
}

// Hypocycloid with outer radius r1 and unit rolling circle:
//   eta(t) = ((r1-1) cos t + cos((r1-1) t), (r1-1) sin t - sin((r1-1) t)),
// which traces r1 cusps; r1 = 4 gives the astroid (4 cos^3 t, 4 sin^3 t).
inline Point hypocycloid_point(int r1, double t) {
  const double a = static_cast<double>(r1 - 1);
  return {a * std::cos(t) + std::cos(a * t), a * std::sin(t) - std::sin(a * t)};
}

inline PolyContour toy_polygon(const ToyParams& p, const ToyOptions& opts = {}) {
  const double c = static_cast<double>(opts.canvas) / 2.0;
  const double ct = std::cos(p.theta), st = std::sin(p.theta);
  PolyContour poly(opts.points);
  for (std::size_t i = 0; i < opts.points; ++i) {
    const double t = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(opts.points);
    const Point e = hypocycloid_point(p.r1, t);
    const double rx = ct * e.x - st * e.y;
    const double ry = st * e.x + ct * e.y;
    if (opts.literal_scaling) {
      poly[i] = {p.kappa * (rx + c + p.q1), p.kappa * (ry + c + p.q2)};
    } else {
      poly[i] = {p.kappa * rx + c + p.q1, p.kappa * ry + c + p.q2};
    }
  }
  return poly;
}

inline bool in_canvas(const PolyContour& poly, std::size_t canvas) {
  const double lim = static_cast<double>(canvas);
  for (const auto& pt : poly)
    if (!(pt.x >= 0.0 && pt.x < lim && pt.y >= 0.0 && pt.y < lim)) return false;
  return true;
}

inline ToySample sample_toy(std::uint64_t seed, const ToyOptions& opts = {}) {
  std::mt19937_64 rng(seed);
  ToySample s;
  s.seed = seed;
  for (int attempt = 0; attempt <= opts.max_redraws; ++attempt) {
    s.params = draw_toy_params(rng);
    s.polygon = toy_polygon(s.params, opts);
    if (in_canvas(s.polygon, opts.canvas)) {
      s.rejected = attempt;
      s.mask = rasterize_polygon(s.polygon, opts.canvas, opts.canvas);
      return s;
    }
  }
  throw std::runtime_error("sample_toy: no in-canvas draw within the redraw budget");
}

}  // namespace wavecurve
