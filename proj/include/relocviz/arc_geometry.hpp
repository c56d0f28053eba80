#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "relocviz/geometry.hpp"

namespace relocviz {

struct ArcParams {
  double bulge = 0.18;           // peak sideways offset as a fraction of chord length
  double shape_exponent = 2.5;   // > 1 pushes the peak, and the tightest bend, toward the target
  int samples = 64;              // segments; the path has samples + 1 points
  double arrow_length = 8.0;
  double arrow_half_angle_deg = 25.0;

  void validate() const {
    if (!(bulge > 0.0)) throw std::invalid_argument("arc: bulge must be > 0");
    if (!(shape_exponent > 1.0)) throw std::invalid_argument("arc: shape exponent must be > 1");
    if (samples < 16) throw std::invalid_argument("arc: need at least 16 samples");
  }
};

using Triangle = std::array<Point, 3>;

struct ArcPath {
  std::vector<Point> points;
  Triangle arrow;
};

/// Point at parameter t ∈ [0, 1] of the spiral from `source` to `target`:
/// chord plus a sideways bulge β·L·sin(π·t^α) along the clockwise normal.
inline Point spiral_point(Point source, Point target, double t, const ArcParams& p) {
  const Point d = target - source;
  const double len = norm(d);
  const Point normal{d.y / len, -d.x / len};
  const double offset = p.bulge * len * std::sin(std::numbers::pi * std::pow(t, p.shape_exponent));
  return source + t * d + offset * normal;
}

/// Unit tangent of the spiral at parameter t.
inline Point spiral_tangent(Point source, Point target, double t, const ArcParams& p) {
  const Point d = target - source;
  const double len = norm(d);
  const Point normal{d.y / len, -d.x / len};
  const double a = p.shape_exponent;
  const double doffset = p.bulge * len * std::numbers::pi * a * std::pow(t, a - 1.0) *
                         std::cos(std::numbers::pi * std::pow(t, a));
  const Point v = d + doffset * normal;
  return (1.0 / norm(v)) * v;
}

/// Isoceles arrowhead: apex at `end`, base centred `arrow_length` behind it.
inline Triangle arrowhead(Point end, Point tangent, const ArcParams& p) {
  const double len = norm(tangent);
  if (!(len > 0.0)) throw std::invalid_argument("arrowhead: tangent must be non-zero");
  const Point u = (1.0 / len) * tangent;
  const Point perp{-u.y, u.x};
  const double half = p.arrow_length * std::tan(p.arrow_half_angle_deg * std::numbers::pi / 180.0);
  const Point base = end - p.arrow_length * u;
  return {end, base + half * perp, base - half * perp};
}

/// Sampled clockwise spiral arc. Endpoints are exactly `source` and `target`.
inline ArcPath spiral_arc(Point source, Point target, const ArcParams& p) {
  if (source == target) throw std::invalid_argument("spiral_arc: source equals target (self-loop)");
  ArcPath path;
  const int m = p.samples;
  path.points.reserve(static_cast<std::size_t>(m) + 1);
  path.points.push_back(source);
  for (int k = 1; k < m; ++k) {
    path.points.push_back(spiral_point(source, target, static_cast<double>(k) / m, p));
  }
  path.points.push_back(target);
  path.arrow = arrowhead(target, spiral_tangent(source, target, 1.0, p), p);
  return path;
}

/// Menger curvature at each interior point (result[i] belongs to points[i + 1]).
inline std::vector<double> discrete_curvature(std::span<const Point> points) {
  if (points.size() < 3) throw std::invalid_argument("discrete_curvature: need at least 3 points");
  std::vector<double> out;
  out.reserve(points.size() - 2);
  for (std::size_t i = 1; i + 1 < points.size(); ++i) {
    const Point a = points[i - 1], b = points[i], c = points[i + 1];
    const double ab = distance(a, b), bc = distance(b, c), ac = distance(a, c);
    const double denom = ab * bc * ac;
    if (denom == 0.0) {
      out.push_back(0.0);
      continue;
    }
    // 4·area = 2·|cross|
    out.push_back(2.0 * std::abs(cross(b - a, c - a)) / denom);
  }
  return out;
}

}  // namespace relocviz
