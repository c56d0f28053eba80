#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

namespace relocviz {

/// 24-bit RGB color.
struct Color {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  constexpr auto operator<=>(const Color&) const = default;

  constexpr std::uint32_t packed() const {
    return (std::uint32_t{r} << 16) | (std::uint32_t{g} << 8) | b;
  }
};

namespace detail {
inline std::optional<int> hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return std::nullopt;
}
}  // namespace detail

/// Parses exactly six hex digits (`RRGGBB`, case-insensitive).
inline std::optional<Color> parse_hex_color(std::string_view text) {
  if (text.size() != 6) return std::nullopt;
  std::uint8_t ch[3];
  for (int i = 0; i < 3; ++i) {
    auto hi = detail::hex_digit(text[2 * i]);
    auto lo = detail::hex_digit(text[2 * i + 1]);
    if (!hi || !lo) return std::nullopt;
    ch[i] = static_cast<std::uint8_t>(*hi * 16 + *lo);
  }
  return Color{ch[0], ch[1], ch[2]};
}

/// Uppercase `RRGGBB`.
inline std::string to_hex(Color c) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "%02X%02X%02X", c.r, c.g, c.b);
  return buf;
}

/// Hue in degrees [0, 360), saturation and lightness in [0, 1].
struct Hsl {
  double h = 0.0;
  double s = 0.0;
  double l = 0.0;

  bool operator==(const Hsl&) const = default;
};

inline Hsl rgb_to_hsl(Color c) {
  const double r = c.r / 255.0;
  const double g = c.g / 255.0;
  const double b = c.b / 255.0;
  const double mx = std::max({r, g, b});
  const double mn = std::min({r, g, b});
  const double l = (mx + mn) / 2.0;
  const double delta = mx - mn;
  if (delta == 0.0) return {0.0, 0.0, l};

  const double s = delta / (1.0 - std::abs(2.0 * l - 1.0));
  double h;
  if (mx == r) {
    h = std::fmod((g - b) / delta, 6.0);
  } else if (mx == g) {
    h = (b - r) / delta + 2.0;
  } else {
    h = (r - g) / delta + 4.0;
  }
  h *= 60.0;
  if (h < 0.0) h += 360.0;
  return {h, std::min(s, 1.0), l};
}

inline Color hsl_to_rgb(const Hsl& hsl) {
  const double c = (1.0 - std::abs(2.0 * hsl.l - 1.0)) * hsl.s;
  const double hp = std::fmod(hsl.h, 360.0) / 60.0;
  const double x = c * (1.0 - std::abs(std::fmod(hp, 2.0) - 1.0));
  double r = 0, g = 0, b = 0;
  if (hp < 1) {
    r = c; g = x;
  } else if (hp < 2) {
    r = x; g = c;
  } else if (hp < 3) {
    g = c; b = x;
  } else if (hp < 4) {
    g = x; b = c;
  } else if (hp < 5) {
    r = x; b = c;
  } else {
    r = c; b = x;
  }
  const double m = hsl.l - c / 2.0;
  auto to_byte = [m](double v) {
    return static_cast<std::uint8_t>(std::clamp(std::lround((v + m) * 255.0), 0L, 255L));
  };
  return {to_byte(r), to_byte(g), to_byte(b)};
}

}  // namespace relocviz
