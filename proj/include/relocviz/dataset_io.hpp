#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "relocviz/color.hpp"
#include "relocviz/geometry.hpp"

namespace relocviz {

// ─── Errors ─────────────────────────────────────────────────────────────────

/// One problem found in an input file. `line` is 1-based; 0 means no line applies.
struct Diagnostic {
  std::size_t line = 0;
  std::string message;

  std::string to_string() const {
    if (line == 0) return message;
    return message + " (line " + std::to_string(line) + ")";
  }
};

namespace detail {
template <typename Items, typename Fn>
std::string join_lines(const Items& items, Fn&& fn) {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += '\n';
    out += fn(item);
  }
  return out;
}
}  // namespace detail

/// Raised by the text parsers. Carries every diagnostic found in the file, not only the first.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(std::vector<Diagnostic> diagnostics)
      : std::runtime_error(detail::join_lines(diagnostics, [](const Diagnostic& d) { return d.to_string(); })),
        diagnostics_(std::move(diagnostics)) {}

  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

/// Raised when parsed inputs are individually valid but do not join.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> issues)
      : std::runtime_error(detail::join_lines(issues, [](const std::string& s) { return s; })),
        issues_(std::move(issues)) {}

  const std::vector<std::string>& issues() const { return issues_; }

 private:
  std::vector<std::string> issues_;
};

// ─── Types ──────────────────────────────────────────────────────────────────

struct PolygonEntry {
  Polygon polygon;
  Color color;

  bool operator==(const PolygonEntry&) const = default;
};

/// The vectorized map: polygons with fill colors, in painter's order.
struct PolygonSet {
  std::int32_t width = 0;
  std::int32_t height = 0;
  std::vector<PolygonEntry> entries;

  bool operator==(const PolygonSet&) const = default;
};

/// Color → building name, in file order.
class ColorMap {
 public:
  struct Entry {
    Color color;
    std::string name;
    bool operator==(const Entry&) const = default;
  };

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  std::optional<std::string> name_of(Color c) const {
    auto it = by_color_.find(c.packed());
    if (it == by_color_.end()) return std::nullopt;
    return entries_[it->second].name;
  }

  bool contains_name(const std::string& name) const { return by_name_.contains(name); }

  /// Returns false (and leaves the map unchanged) on a duplicate color or name.
  bool insert(Color c, std::string name) {
    if (by_color_.contains(c.packed()) || by_name_.contains(name)) return false;
    by_color_.emplace(c.packed(), entries_.size());
    by_name_.emplace(name, entries_.size());
    entries_.push_back({c, std::move(name)});
    return true;
  }

  bool operator==(const ColorMap& other) const { return entries_ == other.entries_; }

 private:
  std::vector<Entry> entries_;
  std::unordered_map<std::uint32_t, std::size_t> by_color_;
  std::unordered_map<std::string, std::size_t> by_name_;
};

using Count = std::int64_t;

/// T stacked N×N relocation matrices; entry (t, i, j) counts moves from building i to j.
struct RelocationSeries {
  std::vector<std::string> period_labels;
  std::vector<std::string> building_names;
  std::vector<Count> values;  // row-major [t][i][j]

  std::size_t periods() const { return period_labels.size(); }
  std::size_t buildings() const { return building_names.size(); }

  Count at(std::size_t t, std::size_t i, std::size_t j) const {
    const std::size_t n = buildings();
    return values[(t * n + i) * n + j];
  }

  Count& at(std::size_t t, std::size_t i, std::size_t j) {
    const std::size_t n = buildings();
    return values[(t * n + i) * n + j];
  }

  bool operator==(const RelocationSeries&) const = default;
};

using BuildingId = std::size_t;

struct Building {
  BuildingId id = 0;
  std::string name;
  Color color;
  std::vector<Polygon> polygons;
  Point anchor;
};

/// Joined, immutable model handed to the engine and scene compiler.
struct Dataset {
  std::int32_t width = 0;
  std::int32_t height = 0;
  std::vector<Building> buildings;
  std::vector<PolygonEntry> context_polygons;
  RelocationSeries series;

  std::optional<BuildingId> find_building(std::string_view name) const {
    for (const auto& b : buildings) {
      if (b.name == name) return b.id;
    }
    return std::nullopt;
  }
};

// ─── Line scanning ──────────────────────────────────────────────────────────

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

/// Calls fn(line_number, tokens) for each non-blank, non-comment line.
template <typename Fn>
void for_each_content_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto tokens = split_ws(line);
    if (!tokens.empty() && tokens.front().front() != '#') fn(line_no, tokens);
    if (end == text.size()) break;
    pos = end + 1;
  }
}

template <typename Int>
std::optional<Int> parse_int(std::string_view s) {
  Int v{};
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || first == last) return std::nullopt;
  return v;
}

}  // namespace detail

// ─── Polygon file ───────────────────────────────────────────────────────────

/// Parses `canvas W H` followed by `RRGGBB x,y x,y ...` lines.
inline PolygonSet parse_polygon_file(std::string_view text) {
  PolygonSet out;
  std::vector<Diagnostic> errors;
  bool have_header = false;

  detail::for_each_content_line(text, [&](std::size_t line, const std::vector<std::string_view>& tok) {
    if (!have_header) {
      have_header = true;
      std::optional<std::int32_t> w, h;
      if (tok.size() == 3 && tok[0] == "canvas") {
        w = detail::parse_int<std::int32_t>(tok[1]);
        h = detail::parse_int<std::int32_t>(tok[2]);
      }
      if (!w || !h || *w < 1 || *h < 1) {
        errors.push_back({line, "invalid canvas header, expected 'canvas <width> <height>'"});
        return;
      }
      out.width = *w;
      out.height = *h;
      return;
    }

    auto color = parse_hex_color(tok[0]);
    if (!color) {
      errors.push_back({line, "malformed color '" + std::string(tok[0]) + "'"});
      return;
    }
    Polygon poly;
    bool ok = true;
    for (std::size_t k = 1; k < tok.size(); ++k) {
      const auto comma = tok[k].find(',');
      std::optional<std::int32_t> x, y;
      if (comma != std::string_view::npos) {
        x = detail::parse_int<std::int32_t>(tok[k].substr(0, comma));
        y = detail::parse_int<std::int32_t>(tok[k].substr(comma + 1));
      }
      if (!x || !y) {
        errors.push_back({line, "non-numeric coordinate '" + std::string(tok[k]) + "'"});
        ok = false;
        break;
      }
      poly.push_back({*x, *y});
    }
    if (!ok) return;
    if (poly.size() < 3) {
      errors.push_back({line, "polygon needs ≥3 vertices"});
      return;
    }
    if (out.width > 0) {
      for (const auto& v : poly) {
        if (v.x < 0 || v.y < 0 || v.x > out.width || v.y > out.height) {
          errors.push_back({line, "vertex " + std::to_string(v.x) + "," + std::to_string(v.y) +
                                      " outside canvas " + std::to_string(out.width) + "x" +
                                      std::to_string(out.height)});
          return;
        }
      }
    }
    if (signed_area(poly) == 0.0) {
      errors.push_back({line, "polygon has zero area"});
      return;
    }
    if (!is_simple(poly)) {
      errors.push_back({line, "polygon is self-intersecting"});
      return;
    }
    out.entries.push_back({std::move(poly), *color});
  });

  if (!have_header) errors.push_back({0, "missing canvas header"});
  if (!errors.empty()) throw ParseError(std::move(errors));
  return out;
}

inline std::string to_text(const PolygonSet& polys) {
  std::string out = "canvas " + std::to_string(polys.width) + " " + std::to_string(polys.height) + "\n";
  for (const auto& e : polys.entries) {
    out += to_hex(e.color);
    for (const auto& v : e.polygon) {
      out += ' ';
      out += std::to_string(v.x);
      out += ',';
      out += std::to_string(v.y);
    }
    out += '\n';
  }
  return out;
}

// ─── Color map file ─────────────────────────────────────────────────────────

inline ColorMap parse_color_map(std::string_view text) {
  ColorMap out;
  std::vector<Diagnostic> errors;
  std::map<std::string, std::size_t, std::less<>> seen_names;
  std::map<std::uint32_t, std::size_t> seen_colors;

  detail::for_each_content_line(text, [&](std::size_t line, const std::vector<std::string_view>& tok) {
    auto color = parse_hex_color(tok[0]);
    if (!color) {
      errors.push_back({line, "malformed color '" + std::string(tok[0]) + "'"});
      return;
    }
    if (tok.size() < 2) {
      errors.push_back({line, "missing building name for color " + to_hex(*color)});
      return;
    }
    if (tok.size() > 2) {
      errors.push_back({line, "building name must not contain whitespace"});
      return;
    }
    const std::string name(tok[1]);
    if (seen_colors.contains(color->packed())) {
      errors.push_back({line, "duplicate color " + to_hex(*color)});
      return;
    }
    if (seen_names.contains(name)) {
      errors.push_back({line, "duplicate name " + name});
      return;
    }
    seen_colors.emplace(color->packed(), line);
    seen_names.emplace(name, line);
    out.insert(*color, name);
  });

  if (!errors.empty()) throw ParseError(std::move(errors));
  return out;
}

inline std::string to_text(const ColorMap& cmap) {
  std::string out;
  for (const auto& e : cmap.entries()) out += to_hex(e.color) + " " + e.name + "\n";
  return out;
}

// ─── Relocation file ────────────────────────────────────────────────────────

inline RelocationSeries parse_relocation_file(std::string_view text) {
  RelocationSeries out;
  std::vector<Diagnostic> errors;
  bool have_header = false;

  struct OpenPeriod {
    std::string label;
    std::size_t line = 0;
    std::size_t rows = 0;
  };
  std::optional<OpenPeriod> open;
  std::map<std::string, std::size_t, std::less<>> labels;

  auto close_period = [&] {
    if (!open) return;
    const std::size_t n = out.buildings();
    if (open->rows != n) {
      errors.push_back({open->line, "period " + open->label + ": expected " + std::to_string(n) +
                                        " rows, got " + std::to_string(open->rows)});
    }
    // Pad so later periods stay aligned even when this one is short.
    const std::size_t want = out.periods() * n * n;
    out.values.resize(want, 0);
    open.reset();
  };

  detail::for_each_content_line(text, [&](std::size_t line, const std::vector<std::string_view>& tok) {
    if (!have_header) {
      have_header = true;
      if (tok[0] != "buildings" || tok.size() < 2) {
        errors.push_back({line, "expected 'buildings <name1> ... <nameN>' header"});
        return;
      }
      std::map<std::string_view, int> dup;
      for (std::size_t k = 1; k < tok.size(); ++k) {
        if (dup[tok[k]]++ == 1) errors.push_back({line, "duplicate building name " + std::string(tok[k])});
        out.building_names.emplace_back(tok[k]);
      }
      return;
    }

    if (tok[0] == "period") {
      close_period();
      if (tok.size() != 2) {
        errors.push_back({line, "expected 'period <label>'"});
      }
      std::string label = tok.size() >= 2 ? std::string(tok[1]) : std::string();
      if (labels.contains(label)) {
        errors.push_back({line, "duplicate period label " + label});
      }
      labels.emplace(label, line);
      out.period_labels.push_back(label);
      out.values.resize(out.periods() * out.buildings() * out.buildings(), 0);
      open = OpenPeriod{std::move(label), line, 0};
      return;
    }

    if (!open) {
      errors.push_back({line, "matrix row before any 'period' line"});
      return;
    }
    const std::size_t n = out.buildings();
    const std::size_t row = open->rows++;
    if (tok.size() != n) {
      errors.push_back({line, "period " + open->label + ": expected " + std::to_string(n) + " entries, got " +
                                  std::to_string(tok.size())});
      return;
    }
    for (std::size_t j = 0; j < n; ++j) {
      auto v = detail::parse_int<Count>(tok[j]);
      if (!v) {
        errors.push_back({line, "non-integer entry '" + std::string(tok[j]) + "'"});
        return;
      }
      if (*v < 0) {
        errors.push_back({line, "negative entry " + std::string(tok[j])});
        return;
      }
      if (row < n) out.at(out.periods() - 1, row, j) = *v;
    }
  });
  close_period();

  if (!have_header) errors.push_back({0, "missing 'buildings' header"});
  else if (out.periods() == 0 && errors.empty()) errors.push_back({0, "no periods"});
  if (!errors.empty()) throw ParseError(std::move(errors));
  return out;
}

inline std::string to_text(const RelocationSeries& series) {
  std::string out = "buildings";
  for (const auto& n : series.building_names) out += " " + n;
  out += '\n';
  const std::size_t n = series.buildings();
  for (std::size_t t = 0; t < series.periods(); ++t) {
    out += "period " + series.period_labels[t] + "\n";
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (j) out += ' ';
        out += std::to_string(series.at(t, i, j));
      }
      out += '\n';
    }
  }
  return out;
}

// ─── Join ───────────────────────────────────────────────────────────────────

/// Canonical interior point of a building: centroid of its largest polygon, or, when that
/// centroid falls outside (non-convex shapes), the middle of the interior span on the
/// centroid's scanline that lies closest to the centroid.
inline Point building_anchor(const std::vector<Polygon>& polygons) {
  const Polygon* largest = &polygons.front();
  for (const auto& p : polygons) {
    if (area(p) > area(*largest)) largest = &p;
  }
  const Polygon& poly = *largest;
  const Point c = centroid(poly);
  if (point_in_polygon(c, poly) && distance_to_boundary(c, poly) > 1e-9) return c;

  auto best_on_scanline = [&](double y) -> std::optional<Point> {
    std::vector<double> xs;
    const std::size_t n = poly.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
      const Point a = poly[i].to_point();
      const Point b = poly[j].to_point();
      if ((a.y > y) != (b.y > y)) xs.push_back(a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y));
    }
    std::sort(xs.begin(), xs.end());
    std::optional<Point> best;
    double best_dist = INFINITY;
    for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
      if (xs[k + 1] - xs[k] <= 0.0) continue;
      const Point mid{(xs[k] + xs[k + 1]) / 2.0, y};
      const double d = c.x < xs[k] ? xs[k] - c.x : (c.x > xs[k + 1] ? c.x - xs[k + 1] : 0.0);
      if (d < best_dist && point_in_polygon(mid, poly) && distance_to_boundary(mid, poly) > 1e-9) {
        best_dist = d;
        best = mid;
      }
    }
    return best;
  };

  // A scanline that runs along a horizontal edge yields only boundary points; nudge it.
  for (double dy : {0.0, 0.25, -0.25, 0.5, -0.5, 0.125, -0.125}) {
    if (auto p = best_on_scanline(c.y + dy)) return *p;
  }
  // Any simple lattice polygon of nonzero area contains a pixel-center-height scanline span.
  for (double y = std::floor(c.y) + 0.5;; y += 1.0) {
    if (auto p = best_on_scanline(y)) return *p;
  }
}

/// Joins the three parsed inputs. Throws ValidationError listing every offending item.
inline Dataset load_dataset(const PolygonSet& polys, const ColorMap& cmap, const RelocationSeries& series) {
  std::vector<std::string> issues;

  for (const auto& e : cmap.entries()) {
    if (std::find(series.building_names.begin(), series.building_names.end(), e.name) ==
        series.building_names.end()) {
      issues.push_back("building " + e.name + " has no relocation data");
    }
  }
  for (const auto& name : series.building_names) {
    if (!cmap.contains_name(name)) issues.push_back("building " + name + " has no color in the color map");
  }
  for (const auto& e : cmap.entries()) {
    const bool used = std::any_of(polys.entries.begin(), polys.entries.end(),
                                  [&](const PolygonEntry& p) { return p.color == e.color; });
    if (!used) issues.push_back("color " + to_hex(e.color) + " (" + e.name + ") matches no polygon");
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));

  Dataset ds;
  ds.width = polys.width;
  ds.height = polys.height;
  ds.series = series;

  std::unordered_map<std::string, BuildingId> id_of;
  for (BuildingId id = 0; id < series.buildings(); ++id) {
    Building b;
    b.id = id;
    b.name = series.building_names[id];
    id_of.emplace(b.name, id);
    ds.buildings.push_back(std::move(b));
  }
  for (const auto& e : cmap.entries()) ds.buildings[id_of.at(e.name)].color = e.color;

  for (const auto& entry : polys.entries) {
    if (auto name = cmap.name_of(entry.color)) {
      ds.buildings[id_of.at(*name)].polygons.push_back(entry.polygon);
    } else {
      ds.context_polygons.push_back(entry);
    }
  }
  for (auto& b : ds.buildings) b.anchor = building_anchor(b.polygons);
  return ds;
}

}  // namespace relocviz
