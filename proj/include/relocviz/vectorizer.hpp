#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <istream>
#include <iterator>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "relocviz/color.hpp"
#include "relocviz/dataset_io.hpp"
#include "relocviz/geometry.hpp"

namespace relocviz {

/// Row-major RGB raster.
struct RasterImage {
  std::int32_t width = 0;
  std::int32_t height = 0;
  std::vector<Color> pixels;

  RasterImage() = default;
  RasterImage(std::int32_t w, std::int32_t h, Color fill = {})
      : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, fill) {}

  Color& at(std::int32_t x, std::int32_t y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
  Color at(std::int32_t x, std::int32_t y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }

  bool operator==(const RasterImage&) const = default;
};

/// 4-connected set of equally colored pixels. Pixels are kept in row-major order.
struct PixelRegion {
  Color color;
  std::vector<LatticePoint> pixels;
};

// ─── PPM (P6, maxval 255) ───────────────────────────────────────────────────

class PpmError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline RasterImage read_ppm(std::istream& in) {
  auto next_token = [&in]() -> std::string {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
      if (c == '#') {
        while ((c = in.get()) != EOF && c != '\n') {
        }
        continue;
      }
      if (std::isspace(c)) {
        if (!tok.empty()) break;
        continue;
      }
      tok.push_back(static_cast<char>(c));
    }
    return tok;
  };

  if (next_token() != "P6") throw PpmError("not a binary PPM (expected P6 magic)");
  const std::string ws = next_token(), hs = next_token(), ms = next_token();
  auto w = detail::parse_int<std::int32_t>(ws);
  auto h = detail::parse_int<std::int32_t>(hs);
  auto m = detail::parse_int<std::int32_t>(ms);
  if (!w || !h || *w < 1 || *h < 1) throw PpmError("invalid PPM dimensions");
  if (!m || *m != 255) throw PpmError("unsupported PPM maxval (only 255)");

  RasterImage img(*w, *h);
  std::vector<char> raw(img.pixels.size() * 3);
  in.read(raw.data(), static_cast<std::streamsize>(raw.size()));
  if (static_cast<std::size_t>(in.gcount()) != raw.size()) {
    throw PpmError("truncated PPM pixel data: expected " + std::to_string(raw.size()) + " bytes, got " +
                   std::to_string(in.gcount()));
  }
  for (std::size_t i = 0; i < img.pixels.size(); ++i) {
    img.pixels[i] = {static_cast<std::uint8_t>(raw[3 * i]), static_cast<std::uint8_t>(raw[3 * i + 1]),
                     static_cast<std::uint8_t>(raw[3 * i + 2])};
  }
  return img;
}

inline void write_ppm(std::ostream& out, const RasterImage& img) {
  out << "P6\n" << img.width << " " << img.height << "\n255\n";
  for (const auto& c : img.pixels) {
    const char rgb[3] = {static_cast<char>(c.r), static_cast<char>(c.g), static_cast<char>(c.b)};
    out.write(rgb, 3);
  }
}

// ─── Regions ────────────────────────────────────────────────────────────────

/// Partitions the image into 4-connected uniform regions, ordered by top-most then
/// left-most pixel. With `snap_tolerance` > 0 a pixel adopts the closest previously
/// opened region color whose per-channel distance is within the tolerance.
inline std::vector<PixelRegion> extract_regions(const RasterImage& img, int snap_tolerance = 0) {
  const std::int32_t w = img.width, h = img.height;
  const std::size_t count = img.pixels.size();

  // Snap pass, raster order. The palette grows whenever a pixel matches nothing.
  std::vector<Color> snapped(img.pixels);
  if (snap_tolerance > 0) {
    std::vector<Color> palette;
    for (auto& px : snapped) {
      int best = -1, best_dist = snap_tolerance + 1;
      for (std::size_t k = 0; k < palette.size(); ++k) {
        const Color p = palette[k];
        const int d = std::max({std::abs(p.r - px.r), std::abs(p.g - px.g), std::abs(p.b - px.b)});
        if (d < best_dist) {
          best_dist = d;
          best = static_cast<int>(k);
          if (d == 0) break;
        }
      }
      if (best >= 0) {
        px = palette[best];
      } else {
        palette.push_back(px);
      }
    }
  }

  std::vector<std::uint8_t> visited(count, 0);
  std::vector<PixelRegion> regions;
  std::vector<LatticePoint> stack;
  for (std::int32_t y = 0; y < h; ++y) {
    for (std::int32_t x = 0; x < w; ++x) {
      const std::size_t idx = static_cast<std::size_t>(y) * w + x;
      if (visited[idx]) continue;
      PixelRegion region;
      region.color = snapped[idx];
      visited[idx] = 1;
      stack.push_back({x, y});
      while (!stack.empty()) {
        const LatticePoint p = stack.back();
        stack.pop_back();
        region.pixels.push_back(p);
        constexpr std::array<std::array<int, 2>, 4> kSteps{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
        for (const auto& s : kSteps) {
          const std::int32_t nx = p.x + s[0], ny = p.y + s[1];
          if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
          const std::size_t nidx = static_cast<std::size_t>(ny) * w + nx;
          if (visited[nidx] || snapped[nidx] != region.color) continue;
          visited[nidx] = 1;
          stack.push_back({nx, ny});
        }
      }
      std::sort(region.pixels.begin(), region.pixels.end(),
                [](LatticePoint a, LatticePoint b) { return a.y != b.y ? a.y < b.y : a.x < b.x; });
      regions.push_back(std::move(region));
    }
  }
  return regions;
}

// ─── Boundary tracing ───────────────────────────────────────────────────────

/// Drops vertices that lie on the straight segment between their neighbours.
inline Polygon simplify_collinear(const Polygon& poly) {
  Polygon cur = poly;
  bool changed = true;
  while (changed && cur.size() > 3) {
    changed = false;
    Polygon next;
    next.reserve(cur.size());
    const std::size_t n = cur.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point prev = (next.empty() ? cur[(i + n - 1) % n] : next.back()).to_point();
      const Point here = cur[i].to_point();
      const Point succ = cur[(i + 1) % n].to_point();
      const Point a = here - prev, b = succ - here;
      const bool duplicate = a.x == 0 && a.y == 0;
      const bool straight = cross(a, b) == 0.0 && dot(a, b) > 0.0;
      if (duplicate || straight) {
        changed = true;
        continue;
      }
      next.push_back(cur[i]);
    }
    cur = std::move(next);
  }
  return cur;
}

/// Outer boundary of a 4-connected region along pixel edges, clockwise in y-down
/// coordinates, starting at the top-left corner of the top-most, left-most pixel.
inline Polygon trace_boundary(const PixelRegion& region) {
  std::int32_t min_x = region.pixels.front().x, max_x = min_x;
  std::int32_t min_y = region.pixels.front().y, max_y = min_y;
  for (const auto& p : region.pixels) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  const std::int32_t bw = max_x - min_x + 1, bh = max_y - min_y + 1;
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(bw) * bh, 0);
  for (const auto& p : region.pixels) mask[static_cast<std::size_t>(p.y - min_y) * bw + (p.x - min_x)] = 1;
  auto inside = [&](std::int32_t x, std::int32_t y) {
    x -= min_x;
    y -= min_y;
    return x >= 0 && y >= 0 && x < bw && y < bh && mask[static_cast<std::size_t>(y) * bw + x];
  };

  // Directions E, S, W, N (clockwise on screen). For a vertex v moving in direction d,
  // the pixel ahead-left / ahead-right has its top-left corner at v + offset.
  constexpr std::array<std::array<int, 2>, 4> kDir{{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}};
  constexpr std::array<std::array<int, 2>, 4> kAheadLeft{{{0, -1}, {0, 0}, {-1, 0}, {-1, -1}}};
  constexpr std::array<std::array<int, 2>, 4> kAheadRight{{{0, 0}, {-1, 0}, {-1, -1}, {0, -1}}};

  const LatticePoint start = region.pixels.front();  // row-major order → top-most, left-most
  LatticePoint v = start;
  int dir = 0;
  Polygon raw;
  do {
    raw.push_back(v);
    v = {v.x + kDir[dir][0], v.y + kDir[dir][1]};
    const bool left = inside(v.x + kAheadLeft[dir][0], v.y + kAheadLeft[dir][1]);
    const bool right = inside(v.x + kAheadRight[dir][0], v.y + kAheadRight[dir][1]);
    // Turning toward a region pixel ahead-left follows the exterior around diagonal pinches.
    if (left) {
      dir = (dir + 3) % 4;
    } else if (!right) {
      dir = (dir + 1) % 4;
    }
  } while (!(v == start && dir == 0));
  return simplify_collinear(raw);
}

// ─── Whole-image conversion ─────────────────────────────────────────────────

/// Raster → polygon list. Regions with fewer than `min_area` pixels are dropped. Entries
/// are in painter's order: descending enclosed polygon area, ties by region order, so a
/// region nested inside another always paints after it.
inline PolygonSet vectorize(const RasterImage& img, int snap_tolerance = 0, std::size_t min_area = 1) {
  const auto regions = extract_regions(img, snap_tolerance);
  struct Traced {
    PolygonEntry entry;
    double enclosed;
    std::size_t order;
  };
  std::vector<Traced> traced;
  for (std::size_t k = 0; k < regions.size(); ++k) {
    if (regions[k].pixels.size() < min_area) continue;
    Polygon poly = trace_boundary(regions[k]);
    const double enclosed = area(poly);
    traced.push_back({{std::move(poly), regions[k].color}, enclosed, k});
  }
  std::stable_sort(traced.begin(), traced.end(), [](const Traced& a, const Traced& b) {
    if (a.enclosed != b.enclosed) return a.enclosed > b.enclosed;
    return a.order < b.order;
  });

  PolygonSet out;
  out.width = img.width;
  out.height = img.height;
  for (auto& t : traced) out.entries.push_back(std::move(t.entry));
  return out;
}

/// Paints entries in list order onto a black canvas using the pixel-center rule.
inline RasterImage rasterize_oracle(const PolygonSet& polys) {
  RasterImage img(polys.width, polys.height);
  for (const auto& e : polys.entries) {
    std::int32_t min_x = polys.width, max_x = 0, min_y = polys.height, max_y = 0;
    for (const auto& v : e.polygon) {
      min_x = std::min(min_x, v.x);
      max_x = std::max(max_x, v.x);
      min_y = std::min(min_y, v.y);
      max_y = std::max(max_y, v.y);
    }
    min_x = std::max(min_x, 0);
    min_y = std::max(min_y, 0);
    max_x = std::min(max_x, polys.width);
    max_y = std::min(max_y, polys.height);
    for (std::int32_t y = min_y; y < max_y; ++y) {
      for (std::int32_t x = min_x; x < max_x; ++x) {
        if (point_in_polygon({x + 0.5, y + 0.5}, e.polygon)) img.at(x, y) = e.color;
      }
    }
  }
  return img;
}

}  // namespace relocviz
