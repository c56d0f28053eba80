#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace relocviz {

/// Continuous 2D point in canvas pixels (y grows downward).
struct Point {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Point&) const = default;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
};

inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double norm(Point p) { return std::hypot(p.x, p.y); }
inline double distance(Point a, Point b) { return norm(a - b); }

/// Vertex on the integer pixel lattice.
struct LatticePoint {
  std::int32_t x = 0;
  std::int32_t y = 0;

  constexpr auto operator<=>(const LatticePoint&) const = default;

  Point to_point() const { return {static_cast<double>(x), static_cast<double>(y)}; }
};

/// Closed polygon on the pixel lattice; the last edge runs back to the first vertex.
using Polygon = std::vector<LatticePoint>;

/// Signed shoelace area. Positive for clockwise traversal in y-down screen space.
inline double signed_area(std::span<const LatticePoint> poly) {
  std::int64_t twice = 0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = poly[i];
    const auto& b = poly[(i + 1) % n];
    twice += std::int64_t{a.x} * b.y - std::int64_t{b.x} * a.y;
  }
  return static_cast<double>(twice) / 2.0;
}

inline double area(std::span<const LatticePoint> poly) { return std::abs(signed_area(poly)); }

/// Area-weighted centroid. Requires nonzero area.
inline Point centroid(std::span<const LatticePoint> poly) {
  double cx = 0.0, cy = 0.0, twice = 0.0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = poly[i].to_point();
    const Point b = poly[(i + 1) % n].to_point();
    const double c = a.x * b.y - b.x * a.y;
    twice += c;
    cx += (a.x + b.x) * c;
    cy += (a.y + b.y) * c;
  }
  return {cx / (3.0 * twice), cy / (3.0 * twice)};
}

/// Crossing-number test. Points exactly on the boundary may go either way.
inline bool point_in_polygon(Point p, std::span<const LatticePoint> poly) {
  bool inside = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point a = poly[i].to_point();
    const Point b = poly[j].to_point();
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_at = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x_at) inside = !inside;
    }
  }
  return inside;
}

inline double point_segment_distance(Point p, Point a, Point b) {
  const Point ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return distance(p, a);
  double t = dot(p - a, ab) / len2;
  t = std::fmax(0.0, std::fmin(1.0, t));
  return distance(p, a + t * ab);
}

inline double distance_to_boundary(Point p, std::span<const LatticePoint> poly) {
  double best = INFINITY;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    best = std::fmin(best, point_segment_distance(p, poly[i].to_point(), poly[(i + 1) % n].to_point()));
  }
  return best;
}

inline bool segments_intersect(Point p1, Point p2, Point q1, Point q2) {
  auto orient = [](Point a, Point b, Point c) {
    const double v = cross(b - a, c - a);
    return (v > 0) - (v < 0);
  };
  auto on_segment = [](Point a, Point b, Point c) {
    return std::fmin(a.x, b.x) <= c.x && c.x <= std::fmax(a.x, b.x) &&
           std::fmin(a.y, b.y) <= c.y && c.y <= std::fmax(a.y, b.y);
  };
  const int o1 = orient(p1, p2, q1), o2 = orient(p1, p2, q2);
  const int o3 = orient(q1, q2, p1), o4 = orient(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(p1, p2, q1)) return true;
  if (o2 == 0 && on_segment(p1, p2, q2)) return true;
  if (o3 == 0 && on_segment(q1, q2, p1)) return true;
  if (o4 == 0 && on_segment(q1, q2, p2)) return true;
  return false;
}

inline double segment_distance(Point p1, Point p2, Point q1, Point q2) {
  if (segments_intersect(p1, p2, q1, q2)) return 0.0;
  return std::fmin(std::fmin(point_segment_distance(p1, q1, q2), point_segment_distance(p2, q1, q2)),
                   std::fmin(point_segment_distance(q1, p1, p2), point_segment_distance(q2, p1, p2)));
}

/// True when no two non-adjacent edges touch and no adjacent edges overlap.
inline bool is_simple(std::span<const LatticePoint> poly) {
  const std::size_t n = poly.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Point a1 = poly[i].to_point(), a2 = poly[(i + 1) % n].to_point();
    if (a1 == a2) return false;
    for (std::size_t j = i + 1; j < n; ++j) {
      const Point b1 = poly[j].to_point(), b2 = poly[(j + 1) % n].to_point();
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (adjacent) {
        // Shared vertex only; a fold-back onto the previous edge is an overlap.
        const Point shared = (j == i + 1) ? a2 : a1;
        const Point u = ((j == i + 1) ? a1 : a2) - shared;
        const Point v = ((j == i + 1) ? b2 : b1) - shared;
        if (cross(u, v) == 0.0 && dot(u, v) > 0.0) return false;
        continue;
      }
      if (segments_intersect(a1, a2, b1, b2)) return false;
    }
  }
  return true;
}

}  // namespace relocviz
