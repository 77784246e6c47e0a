#pragma once

#include "fissura/lift.hpp"
#include "fissura/mesh.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace testing_support {

using fissura::Point2;

inline fissura::Polygon2D unit_square() { return fissura::Polygon2D::rectangle(0.0, 0.0, 1.0, 1.0); }

inline fissura::LiftedTriangulation lifted(const fissura::SurfaceSpec& spec, double h, double jitter = 0.0,
                                           std::uint64_t seed = 1) {
  return fissura::lift(fissura::generate_mesh(spec, {h, jitter, seed}), spec);
}

/// Random smooth surface on the unit square.
inline fissura::SurfaceSpec random_surface(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> amp(-0.2, 0.2);
  std::uniform_real_distribution<double> wl(0.6, 2.0);
  return fissura::SurfaceSpec::sinusoid(unit_square(), amp(rng), amp(rng), wl(rng));
}

inline Eigen::Vector2d random_unit2(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> a(0.0, 2.0 * std::numbers::pi);
  const double t = a(rng);
  return {std::cos(t), std::sin(t)};
}

/// Unit vector with n_3 > 0, bounded away from horizontal.
inline Eigen::Vector3d random_normal(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  for (;;) {
    Eigen::Vector3d n(g(rng), g(rng), g(rng));
    n.normalize();
    if (n.z() < 0) n.z() = -n.z();
    if (n.z() > 1e-3) return n;
  }
}

/// Length of the intersection of the line {o + s d} with triangle abc.
inline double line_triangle_length(const Point2& a, const Point2& b, const Point2& c, const Point2& o,
                                   const Point2& d) {
  double lo = -std::numeric_limits<double>::infinity(), hi = std::numeric_limits<double>::infinity();
  const Point2 v[3] = {a, b, c};
  const double orient = (b - a).x() * (c - a).y() - (b - a).y() * (c - a).x() > 0 ? 1.0 : -1.0;
  for (int i = 0; i < 3; ++i) {
    const Point2 p = v[i], q = v[(i + 1) % 3];
    // Inside: orient * cross(q - p, x - p) >= 0.
    const Point2 e = q - p;
    const double base = orient * (e.x() * (o - p).y() - e.y() * (o - p).x());
    const double slope = orient * (e.x() * d.y() - e.y() * d.x());
    if (slope == 0.0) {
      if (base < 0) return 0.0;
      continue;
    }
    const double s = -base / slope;
    if (slope > 0)
      lo = std::max(lo, s);
    else
      hi = std::min(hi, s);
  }
  return hi > lo ? (hi - lo) * d.norm() : 0.0;
}

/// Brute-force max chord: sweeps `offsets` parallel lines across the triangle.
inline double brute_force_chord(const Point2& a, const Point2& b, const Point2& c, double t, int offsets = 10000) {
  const Point2 d(std::cos(t), std::sin(t));
  const Point2 perp(-d.y(), d.x());
  const double pa = a.dot(perp), pb = b.dot(perp), pc = c.dot(perp);
  const double lo = std::min({pa, pb, pc}), hi = std::max({pa, pb, pc});
  auto chord = [&](double s) { return line_triangle_length(a, b, c, perp * s, d); };
  double best = 0.0, best_s = lo;
  const double step = (hi - lo) / offsets;
  for (int i = 0; i <= offsets; ++i) {
    const double s = lo + step * i;
    const double len = chord(s);
    if (len > best) {
      best = len;
      best_s = s;
    }
  }
  // The chord length is concave in the offset, so ternary search around the
  // best sample recovers a peak that falls between grid lines.
  double l = std::max(lo, best_s - step), r = std::min(hi, best_s + step);
  for (int it = 0; it < 200; ++it) {
    const double m1 = l + (r - l) / 3.0, m2 = r - (r - l) / 3.0;
    if (chord(m1) < chord(m2))
      l = m1;
    else
      r = m2;
  }
  return std::max(best, chord(0.5 * (l + r)));
}

inline double angle_between(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

}  // namespace testing_support
