#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "relocviz/color.hpp"
#include "relocviz/engine.hpp"

namespace relocviz {

/// 0 background, 1 armed, 2 selected, 3 selected and armed.
enum class AttentionLevel : int { background = 0, armed = 1, selected = 2, selected_armed = 3 };

constexpr int to_int(AttentionLevel a) { return static_cast<int>(a); }

constexpr AttentionLevel attention_level(bool selected, bool armed) {
  return static_cast<AttentionLevel>((selected ? 2 : 0) + (armed ? 1 : 0));
}

struct StyleParams {
  double base_saturation = 0.15;  // level 0
  double top_saturation = 0.90;   // level 3
  double building_hue = 10.0;
  double arc_hue = 210.0;
  double building_lightness = 0.50;
  double arc_lightness = 0.45;
  double context_saturation_cap = 0.08;
  double context_lightness_min = 0.65;
  double context_lightness_max = 0.85;
  double min_thickness = 1.0;
  double max_thickness = 8.0;
  double thickness_gain = 4.0 / std::log(100.0);
  double histogram_max_height = 40.0;

  void validate() const {
    if (!(0.0 <= base_saturation && base_saturation < top_saturation && top_saturation <= 1.0)) {
      throw std::invalid_argument("style: require 0 ≤ s0 < s3 ≤ 1");
    }
    if (!(min_thickness < max_thickness)) throw std::invalid_argument("style: require w_min < w_max");
    if (!(thickness_gain > 0.0)) throw std::invalid_argument("style: require thickness gain > 0");
    if (!(histogram_max_height > 0.0)) throw std::invalid_argument("style: require histogram height > 0");
    if (!(context_lightness_min <= context_lightness_max)) {
      throw std::invalid_argument("style: context lightness range is inverted");
    }
  }
};

/// Geometric interpolation s0·(s3/s0)^(ℓ/3) between the level-0 and level-3 saturations.
inline double saturation(AttentionLevel level, const StyleParams& p) {
  const int l = to_int(level);
  if (l == 0) return p.base_saturation;
  if (l == 3) return p.top_saturation;
  return p.base_saturation * std::pow(p.top_saturation / p.base_saturation, l / 3.0);
}

/// Near-monochrome rendition of a context color: saturation capped, lightness squeezed
/// into the configured band.
inline Hsl context_color(Color source, const StyleParams& p) {
  Hsl hsl = rgb_to_hsl(source);
  hsl.s = std::min(hsl.s, p.context_saturation_cap);
  hsl.l = p.context_lightness_min + hsl.l * (p.context_lightness_max - p.context_lightness_min);
  return hsl;
}

inline double arc_thickness(Count count, const StyleParams& p) {
  if (count < 1) throw std::invalid_argument("arc_thickness: count must be ≥ 1");
  const double w = p.min_thickness + p.thickness_gain * std::log(static_cast<double>(count));
  return std::clamp(w, p.min_thickness, p.max_thickness);
}

inline double histogram_height(Count count, Count max_count, const StyleParams& p) {
  if (max_count <= 0) return 0.0;
  if (count == max_count) return p.histogram_max_height;
  return p.histogram_max_height * std::log1p(static_cast<double>(count)) /
         std::log1p(static_cast<double>(max_count));
}

enum class ElementKind { context_polygon, arc, building };

/// Paint layer, 0 (first) to 4 (last).
enum class LayerId : int {
  context = 0,
  background_arcs = 1,
  buildings = 2,
  focus_arcs = 3,
  focus_buildings = 4,
};

constexpr int kLayerCount = 5;

constexpr LayerId layer_of(ElementKind kind, AttentionLevel level) {
  switch (kind) {
    case ElementKind::context_polygon:
      return LayerId::context;
    case ElementKind::arc:
      return level == AttentionLevel::background ? LayerId::background_arcs : LayerId::focus_arcs;
    case ElementKind::building:
      return level == AttentionLevel::background ? LayerId::buildings : LayerId::focus_buildings;
  }
  return LayerId::context;
}

}  // namespace relocviz
