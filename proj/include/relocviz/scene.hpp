#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <span>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "relocviz/arc_geometry.hpp"
#include "relocviz/dataset_io.hpp"
#include "relocviz/engine.hpp"
#include "relocviz/styling.hpp"

namespace relocviz {

// ─── View state ─────────────────────────────────────────────────────────────

struct CardPlacement {
  BuildingId building = 0;
  double x = 0.0;
  double y = 0.0;
  bool pinned = false;
};

/// Everything the analyst controls.
struct ViewState {
  TimeWindow window;
  Count threshold = 1;
  std::set<BuildingId> selected;
  std::optional<BuildingId> armed;
  std::vector<CardPlacement> cards;  // stored positions; every building must be selected
};

class ViewError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline void validate_view(const Dataset& ds, const ViewState& vs) {
  try {
    check_window(vs.window, ds.series.periods());
  } catch (const WindowError& e) {
    throw ViewError(e.what());
  }
  if (vs.threshold < 1) throw ViewError("threshold must be ≥ 1");
  const std::size_t n = ds.buildings.size();
  for (BuildingId id : vs.selected) {
    if (id >= n) throw ViewError("unknown building id " + std::to_string(id));
  }
  if (vs.armed && *vs.armed >= n) throw ViewError("unknown building id " + std::to_string(*vs.armed));
  std::set<BuildingId> seen;
  for (const auto& c : vs.cards) {
    if (c.building >= n) throw ViewError("unknown building id " + std::to_string(c.building));
    if (!vs.selected.contains(c.building)) {
      throw ViewError("card for building " + std::to_string(c.building) + " which is not selected");
    }
    if (!seen.insert(c.building).second) {
      throw ViewError("duplicate card for building " + std::to_string(c.building));
    }
  }
}

// ─── Scene ──────────────────────────────────────────────────────────────────

struct PolygonItem {
  std::vector<Point> points;
  Hsl fill;
  std::optional<BuildingId> building;  // unset for context polygons

  bool operator==(const PolygonItem&) const = default;
};

struct ArcItem {
  BuildingId src = 0;
  BuildingId dst = 0;
  Count count = 0;
  std::vector<Point> points;
  double thickness = 0.0;
  Hsl fill;
  Triangle arrow;

  bool operator==(const ArcItem&) const = default;
};

using DrawItem = std::variant<PolygonItem, ArcItem>;

struct HistogramBar {
  std::string label;
  Count total = 0;
  double height = 0.0;
  bool in_window = false;

  bool operator==(const HistogramBar&) const = default;
};

struct SliderState {
  std::size_t lo = 0;
  std::size_t hi = 0;
  std::size_t periods = 0;

  bool operator==(const SliderState&) const = default;
};

struct PlacedCard {
  SummaryCard summary;
  double x = 0.0;
  double y = 0.0;
  bool pinned = false;

  bool operator==(const PlacedCard&) const = default;
};

/// Renderer input: five paint layers plus the time slider, histogram and cards.
struct Scene {
  std::int32_t width = 0;
  std::int32_t height = 0;
  std::array<std::vector<DrawItem>, kLayerCount> layers;
  std::vector<HistogramBar> histogram;
  SliderState slider;
  std::vector<PlacedCard> cards;
  std::vector<std::string> building_names;  // labels for static export; not part of the JSON

  std::vector<DrawItem>& layer(LayerId id) { return layers[static_cast<std::size_t>(id)]; }
  const std::vector<DrawItem>& layer(LayerId id) const { return layers[static_cast<std::size_t>(id)]; }

  bool operator==(const Scene&) const = default;
};

/// Offset of a card without a stored position from its building anchor, and the cascade step
/// applied to each further default-placed card.
inline constexpr Point kCardOffset{16.0, -16.0};
inline constexpr double kCardCascade = 12.0;

namespace detail {

inline double polygon_item_area(const std::vector<Point>& pts) {
  double twice = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) twice += cross(pts[i], pts[(i + 1) % pts.size()]);
  return std::abs(twice) / 2.0;
}

/// Polygons by area descending then first vertex; arcs by (src, dst); polygons before arcs.
inline bool item_less(const DrawItem& a, const DrawItem& b) {
  if (a.index() != b.index()) return a.index() < b.index();
  if (const auto* pa = std::get_if<PolygonItem>(&a)) {
    const auto& pb = std::get<PolygonItem>(b);
    const double aa = polygon_item_area(pa->points), ab = polygon_item_area(pb.points);
    if (aa != ab) return aa > ab;
    const Point fa = pa->points.front(), fb = pb.points.front();
    if (fa.x != fb.x) return fa.x < fb.x;
    return fa.y < fb.y;
  }
  const auto& xa = std::get<ArcItem>(a);
  const auto& xb = std::get<ArcItem>(b);
  if (xa.src != xb.src) return xa.src < xb.src;
  return xa.dst < xb.dst;
}

inline std::vector<Point> to_points(const Polygon& poly) {
  std::vector<Point> out;
  out.reserve(poly.size());
  for (const auto& v : poly) out.push_back(v.to_point());
  return out;
}

}  // namespace detail

inline void sort_layer(std::vector<DrawItem>& items) {
  std::stable_sort(items.begin(), items.end(), detail::item_less);
}

inline Scene compile_scene(const Dataset& ds, const ViewState& vs, const StyleParams& style,
                           const ArcParams& arcp) {
  validate_view(ds, vs);

  Scene scene;
  scene.width = ds.width;
  scene.height = ds.height;
  for (const auto& b : ds.buildings) scene.building_names.push_back(b.name);

  auto level_of = [&](BuildingId id) {
    return attention_level(vs.selected.contains(id), vs.armed && *vs.armed == id);
  };

  for (const auto& ctx : ds.context_polygons) {
    scene.layer(layer_of(ElementKind::context_polygon, AttentionLevel::background))
        .push_back(PolygonItem{detail::to_points(ctx.polygon), context_color(ctx.color, style), std::nullopt});
  }

  for (const auto& b : ds.buildings) {
    const AttentionLevel lvl = level_of(b.id);
    const Hsl fill{style.building_hue, saturation(lvl, style), style.building_lightness};
    for (const auto& poly : b.polygons) {
      scene.layer(layer_of(ElementKind::building, lvl)).push_back(PolygonItem{detail::to_points(poly), fill, b.id});
    }
  }

  const AggregateMatrix agg = aggregate(ds.series, vs.window);
  for (const Link& link : visible_links(agg, vs.threshold, vs.selected, vs.armed)) {
    const AttentionLevel lvl = std::max(level_of(link.src), level_of(link.dst));
    ArcPath path = spiral_arc(ds.buildings[link.src].anchor, ds.buildings[link.dst].anchor, arcp);
    scene.layer(layer_of(ElementKind::arc, lvl))
        .push_back(ArcItem{link.src, link.dst, link.count, std::move(path.points), arc_thickness(link.count, style),
                           Hsl{style.arc_hue, saturation(lvl, style), style.arc_lightness}, path.arrow});
  }

  for (auto& items : scene.layers) sort_layer(items);

  const auto totals = period_totals(ds.series);
  const Count max_total = totals.empty() ? 0 : *std::max_element(totals.begin(), totals.end());
  for (std::size_t t = 0; t < totals.size(); ++t) {
    scene.histogram.push_back({ds.series.period_labels[t], totals[t], histogram_height(totals[t], max_total, style),
                               vs.window.lo <= t && t <= vs.window.hi});
  }
  scene.slider = {vs.window.lo, vs.window.hi, ds.series.periods()};

  std::size_t cascade = 0;
  for (BuildingId id : vs.selected) {
    PlacedCard card{building_summary(agg, id)};
    auto stored = std::find_if(vs.cards.begin(), vs.cards.end(),
                               [id](const CardPlacement& c) { return c.building == id; });
    if (stored != vs.cards.end()) {
      card.x = stored->x;
      card.y = stored->y;
      card.pinned = stored->pinned;
    } else {
      const Point a = ds.buildings[id].anchor;
      const double step = kCardCascade * static_cast<double>(cascade++);
      card.x = a.x + kCardOffset.x + step;
      card.y = a.y + kCardOffset.y + step;
    }
    scene.cards.push_back(std::move(card));
  }
  return scene;
}

// ─── JSON ───────────────────────────────────────────────────────────────────

using Json = nlohmann::ordered_json;

namespace detail {

inline Json points_json(std::span<const Point> pts) {
  Json arr = Json::array();
  for (const auto& p : pts) arr.push_back(Json::array({p.x, p.y}));
  return arr;
}

inline Json hsl_json(const Hsl& c) { return Json{{"h", c.h}, {"s", c.s}, {"l", c.l}}; }

inline Json partners_json(const SummaryCard& card) {
  Json arr = Json::array();
  for (const auto& p : card.partners) arr.push_back(Json{{"id", p.id}, {"out", p.out}, {"in", p.in}});
  return arr;
}

}  // namespace detail

/// Card payload without placement, as served for a single building.
inline Json summary_to_json(const SummaryCard& card) {
  return Json{{"building", card.building},
              {"from", card.window.lo},
              {"to", card.window.hi},
              {"out", card.out_total},
              {"in", card.in_total},
              {"net", card.net},
              {"internal", card.internal},
              {"partners", detail::partners_json(card)}};
}

inline Json scene_to_json(const Scene& s) {
  Json layers = Json::array();
  for (const auto& items : s.layers) {
    Json arr = Json::array();
    for (const auto& item : items) {
      if (const auto* poly = std::get_if<PolygonItem>(&item)) {
        Json j{{"kind", "poly"}, {"points", detail::points_json(poly->points)}, {"fill", detail::hsl_json(poly->fill)}};
        if (poly->building) j["building"] = *poly->building;
        arr.push_back(std::move(j));
      } else {
        const auto& arc = std::get<ArcItem>(item);
        arr.push_back(Json{{"kind", "arc"},
                           {"src", arc.src},
                           {"dst", arc.dst},
                           {"count", arc.count},
                           {"points", detail::points_json(arc.points)},
                           {"thickness", arc.thickness},
                           {"fill", detail::hsl_json(arc.fill)},
                           {"arrow", detail::points_json(arc.arrow)}});
      }
    }
    layers.push_back(std::move(arr));
  }

  Json histogram = Json::array();
  for (const auto& bar : s.histogram) {
    histogram.push_back(
        Json{{"label", bar.label}, {"total", bar.total}, {"height", bar.height}, {"in_window", bar.in_window}});
  }

  Json cards = Json::array();
  for (const auto& c : s.cards) {
    cards.push_back(Json{{"building", c.summary.building},
                         {"x", c.x},
                         {"y", c.y},
                         {"pinned", c.pinned},
                         {"out", c.summary.out_total},
                         {"in", c.summary.in_total},
                         {"net", c.summary.net},
                         {"internal", c.summary.internal},
                         {"partners", detail::partners_json(c.summary)}});
  }

  return Json{{"canvas", Json{{"w", s.width}, {"h", s.height}}},
              {"layers", std::move(layers)},
              {"histogram", std::move(histogram)},
              {"slider", Json{{"lo", s.slider.lo}, {"hi", s.slider.hi}, {"t", s.slider.periods}}},
              {"cards", std::move(cards)}};
}

/// Canonical wire form of a scene.
inline std::string serialize_scene(const Scene& s) { return scene_to_json(s).dump(); }

/// FNV-1a over the canonical serialization.
inline std::uint64_t scene_digest(const Scene& s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : serialize_scene(s)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

// ─── SVG ────────────────────────────────────────────────────────────────────

namespace detail {

inline std::string fmt3(double v) {
  if (std::abs(v) < 0.0005) v = 0.0;
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

inline std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string svg_hsl(const Hsl& c) {
  return "hsl(" + fmt3(c.h) + "," + fmt3(c.s * 100.0) + "%," + fmt3(c.l * 100.0) + "%)";
}

inline std::string svg_points(std::span<const Point> pts) {
  std::string out;
  for (const auto& p : pts) {
    if (!out.empty()) out += ' ';
    out += fmt3(p.x) + "," + fmt3(p.y);
  }
  return out;
}

}  // namespace detail

/// Layout of the band under the map that holds the histogram and slider.
struct SvgLayout {
  double band_gap = 12.0;
  double histogram_height = 40.0;
  double slider_gap = 10.0;
  double card_width = 170.0;
  double card_line = 14.0;
};

/// Static SVG export. Byte-identical for equal scenes.
inline std::string scene_to_svg(const Scene& s, const SvgLayout& layout = {}) {
  using detail::fmt3;
  const double map_h = s.height;
  const double bar_base = map_h + layout.band_gap + layout.histogram_height;
  const double slider_y = bar_base + layout.slider_gap;
  const double total_h = slider_y + layout.slider_gap;

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt3(s.width) + "\" height=\"" + fmt3(total_h) +
         "\" viewBox=\"0.000 0.000 " + fmt3(s.width) + " " + fmt3(total_h) + "\">\n";

  for (std::size_t z = 0; z < s.layers.size(); ++z) {
    std::vector<DrawItem> items = s.layers[z];
    sort_layer(items);
    out += "<g id=\"layer-" + std::to_string(z) + "\">\n";
    for (const auto& item : items) {
      if (const auto* poly = std::get_if<PolygonItem>(&item)) {
        out += "<polygon";
        if (poly->building) out += " data-building=\"" + std::to_string(*poly->building) + "\"";
        out += " points=\"" + detail::svg_points(poly->points) + "\" fill=\"" + detail::svg_hsl(poly->fill) + "\"/>\n";
      } else {
        const auto& arc = std::get<ArcItem>(item);
        std::string d;
        for (std::size_t k = 0; k < arc.points.size(); ++k) {
          d += (k == 0 ? "M" : " L") + fmt3(arc.points[k].x) + " " + fmt3(arc.points[k].y);
        }
        const std::string color = detail::svg_hsl(arc.fill);
        out += "<path class=\"arc\" data-src=\"" + std::to_string(arc.src) + "\" data-dst=\"" +
               std::to_string(arc.dst) + "\" data-count=\"" + std::to_string(arc.count) + "\" d=\"" + d +
               "\" fill=\"none\" stroke=\"" + color + "\" stroke-width=\"" + fmt3(arc.thickness) +
               "\" stroke-linecap=\"round\"/>\n";
        out += "<polygon class=\"arrow\" points=\"" + detail::svg_points(arc.arrow) + "\" fill=\"" + color + "\"/>\n";
      }
    }
    out += "</g>\n";
  }

  out += "<g id=\"histogram\">\n";
  const double bar_w = s.histogram.empty() ? 0.0 : static_cast<double>(s.width) / s.histogram.size();
  for (std::size_t t = 0; t < s.histogram.size(); ++t) {
    const auto& bar = s.histogram[t];
    out += "<rect data-label=\"" + detail::xml_escape(bar.label) + "\" data-total=\"" + std::to_string(bar.total) +
           "\" x=\"" + fmt3(bar_w * t + 1.0) + "\" y=\"" + fmt3(bar_base - bar.height) + "\" width=\"" +
           fmt3(std::max(bar_w - 2.0, 1.0)) + "\" height=\"" + fmt3(bar.height) + "\" fill=\"#666666\" opacity=\"" +
           (bar.in_window ? "1.000" : "0.350") + "\"/>\n";
  }
  out += "</g>\n";

  out += "<g id=\"slider\">\n";
  if (s.slider.periods > 0) {
    const double step = static_cast<double>(s.width) / s.slider.periods;
    const double x_lo = step * s.slider.lo;
    const double x_hi = step * (s.slider.hi + 1);
    out += "<line x1=\"0.000\" y1=\"" + fmt3(slider_y) + "\" x2=\"" + fmt3(s.width) + "\" y2=\"" + fmt3(slider_y) +
           "\" stroke=\"#999999\" stroke-width=\"1.000\"/>\n";
    out += "<rect class=\"window\" x=\"" + fmt3(x_lo) + "\" y=\"" + fmt3(slider_y - 3.0) + "\" width=\"" +
           fmt3(x_hi - x_lo) + "\" height=\"6.000\" fill=\"#444444\"/>\n";
    out += "<polygon class=\"handle-lo\" points=\"" +
           detail::svg_points(std::array<Point, 3>{{{x_lo, slider_y}, {x_lo - 5.0, slider_y - 5.0},
                                                    {x_lo - 5.0, slider_y + 5.0}}}) +
           "\" fill=\"#222222\"/>\n";
    out += "<polygon class=\"handle-hi\" points=\"" +
           detail::svg_points(std::array<Point, 3>{{{x_hi, slider_y}, {x_hi + 5.0, slider_y - 5.0},
                                                    {x_hi + 5.0, slider_y + 5.0}}}) +
           "\" fill=\"#222222\"/>\n";
  }
  out += "</g>\n";

  out += "<g id=\"cards\">\n";
  auto name_of = [&](BuildingId id) {
    return id < s.building_names.size() ? s.building_names[id] : "#" + std::to_string(id);
  };
  for (const auto& c : s.cards) {
    const auto& sum = c.summary;
    std::vector<std::string> lines{
        name_of(sum.building),
        "out " + std::to_string(sum.out_total) + "  in " + std::to_string(sum.in_total),
        "net " + std::string(sum.net > 0 ? "+" : "") + std::to_string(sum.net) + "  internal " +
            std::to_string(sum.internal),
    };
    for (const auto& p : sum.partners) {
      lines.push_back(name_of(p.id) + ": out " + std::to_string(p.out) + ", in " + std::to_string(p.in));
    }
    const double h = layout.card_line * (lines.size() + 0.5);
    out += "<g class=\"card\" data-building=\"" + std::to_string(sum.building) + "\" data-pinned=\"" +
           (c.pinned ? "true" : "false") + "\">\n";
    out += "<rect x=\"" + fmt3(c.x) + "\" y=\"" + fmt3(c.y) + "\" width=\"" + fmt3(layout.card_width) +
           "\" height=\"" + fmt3(h) + "\" fill=\"#ffffee\" stroke=\"#888888\"/>\n";
    for (std::size_t k = 0; k < lines.size(); ++k) {
      out += "<text x=\"" + fmt3(c.x + 4.0) + "\" y=\"" + fmt3(c.y + layout.card_line * (k + 1)) +
             "\" font-size=\"11.000\">" + detail::xml_escape(lines[k]) + "</text>\n";
    }
    out += "</g>\n";
  }
  out += "</g>\n";
  out += "</svg>\n";
  return out;
}

}  // namespace relocviz
