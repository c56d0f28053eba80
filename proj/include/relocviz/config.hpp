#pragma once

#include <charconv>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "relocviz/arc_geometry.hpp"
#include "relocviz/styling.hpp"

namespace relocviz {

struct RenderParams {
  StyleParams style;
  ArcParams arc;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::map<std::string, std::function<void(RenderParams&, double)>, std::less<>> config_setters() {
  return {
      {"s0", [](RenderParams& p, double v) { p.style.base_saturation = v; }},
      {"s3", [](RenderParams& p, double v) { p.style.top_saturation = v; }},
      {"building_hue", [](RenderParams& p, double v) { p.style.building_hue = v; }},
      {"arc_hue", [](RenderParams& p, double v) { p.style.arc_hue = v; }},
      {"building_lightness", [](RenderParams& p, double v) { p.style.building_lightness = v; }},
      {"arc_lightness", [](RenderParams& p, double v) { p.style.arc_lightness = v; }},
      {"context_saturation_cap", [](RenderParams& p, double v) { p.style.context_saturation_cap = v; }},
      {"context_lightness_min", [](RenderParams& p, double v) { p.style.context_lightness_min = v; }},
      {"context_lightness_max", [](RenderParams& p, double v) { p.style.context_lightness_max = v; }},
      {"w_min", [](RenderParams& p, double v) { p.style.min_thickness = v; }},
      {"w_max", [](RenderParams& p, double v) { p.style.max_thickness = v; }},
      {"thickness_gain", [](RenderParams& p, double v) { p.style.thickness_gain = v; }},
      {"histogram_height", [](RenderParams& p, double v) { p.style.histogram_max_height = v; }},
      {"bulge", [](RenderParams& p, double v) { p.arc.bulge = v; }},
      {"shape_exponent", [](RenderParams& p, double v) { p.arc.shape_exponent = v; }},
      {"samples", [](RenderParams& p, double v) { p.arc.samples = static_cast<int>(v); }},
      {"arrow_length", [](RenderParams& p, double v) { p.arc.arrow_length = v; }},
      {"arrow_half_angle", [](RenderParams& p, double v) { p.arc.arrow_half_angle_deg = v; }},
  };
}

}  // namespace detail

/// Applies `key = value` overrides on top of `base`. `#` starts a comment line.
inline RenderParams parse_render_config(std::string_view text, RenderParams base = {}) {
  const auto setters = detail::config_setters();
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = detail::trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;

    const auto eq = line.find('=');
    const std::string where = " (line " + std::to_string(line_no) + ")";
    if (eq == std::string_view::npos) throw ConfigError("expected 'key = value'" + where);
    const std::string_view key = detail::trim(line.substr(0, eq));
    const std::string_view val = detail::trim(line.substr(eq + 1));
    auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError("unknown key '" + std::string(key) + "'" + where);
    double v{};
    auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), v);
    if (ec != std::errc{} || ptr != val.data() + val.size()) {
      throw ConfigError("non-numeric value for '" + std::string(key) + "'" + where);
    }
    it->second(base, v);
  }
  try {
    base.style.validate();
    base.arc.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return base;
}

}  // namespace relocviz
