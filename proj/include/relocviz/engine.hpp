#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "relocviz/dataset_io.hpp"

namespace relocviz {

/// Inclusive range of period indices.
struct TimeWindow {
  std::size_t lo = 0;
  std::size_t hi = 0;

  std::size_t width() const { return hi - lo + 1; }
  bool operator==(const TimeWindow&) const = default;
};

class WindowError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Throws WindowError unless 0 ≤ lo ≤ hi ≤ T−1.
inline void check_window(const TimeWindow& w, std::size_t period_count) {
  if (w.lo >= period_count || w.hi >= period_count) throw WindowError("window out of range");
  if (w.lo > w.hi) throw WindowError("lo > hi");
}

/// Element-wise sum of a window of relocation matrices.
struct AggregateMatrix {
  std::size_t n = 0;
  TimeWindow window;
  std::vector<Count> values;  // row-major [i][j]

  Count at(std::size_t i, std::size_t j) const { return values[i * n + j]; }
  bool operator==(const AggregateMatrix&) const = default;
};

inline AggregateMatrix aggregate(const RelocationSeries& series, const TimeWindow& w) {
  check_window(w, series.periods());
  const std::size_t n = series.buildings();
  const std::size_t stride = n * n;
  AggregateMatrix out{n, w, std::vector<Count>(stride, 0)};
  for (std::size_t t = w.lo; t <= w.hi; ++t) {
    const Count* src = series.values.data() + t * stride;
    for (std::size_t k = 0; k < stride; ++k) out.values[k] += src[k];
  }
  return out;
}

/// Off-diagonal relocation total of every period.
inline std::vector<Count> period_totals(const RelocationSeries& series) {
  const std::size_t n = series.buildings();
  std::vector<Count> totals(series.periods(), 0);
  for (std::size_t t = 0; t < series.periods(); ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j) totals[t] += series.at(t, i, j);
      }
    }
  }
  return totals;
}

enum class LinkClass { background, focus };

struct Link {
  BuildingId src = 0;
  BuildingId dst = 0;
  Count count = 0;
  LinkClass cls = LinkClass::background;

  bool operator==(const Link&) const = default;
};

/// Links incident to a selected or armed building are always focus links; every other
/// nonzero pair is a background link only when its count reaches `threshold`.
inline std::vector<Link> visible_links(const AggregateMatrix& agg, Count threshold,
                                       const std::set<BuildingId>& selected,
                                       std::optional<BuildingId> armed) {
  if (threshold < 1) throw std::invalid_argument("threshold must be ≥ 1");
  auto in_focus = [&](BuildingId id) { return selected.contains(id) || (armed && *armed == id); };
  std::vector<Link> links;
  for (BuildingId i = 0; i < agg.n; ++i) {
    for (BuildingId j = 0; j < agg.n; ++j) {
      const Count c = agg.at(i, j);
      if (i == j || c < 1) continue;
      if (in_focus(i) || in_focus(j)) {
        links.push_back({i, j, c, LinkClass::focus});
      } else if (c >= threshold) {
        links.push_back({i, j, c, LinkClass::background});
      }
    }
  }
  return links;
}

struct PartnerFlow {
  BuildingId id = 0;
  Count out = 0;
  Count in = 0;

  bool operator==(const PartnerFlow&) const = default;
};

struct SummaryCard {
  BuildingId building = 0;
  TimeWindow window;
  Count out_total = 0;
  Count in_total = 0;
  Count net = 0;  // in − out
  Count internal = 0;
  std::vector<PartnerFlow> partners;  // by out+in descending, then id ascending

  bool operator==(const SummaryCard&) const = default;
};

inline SummaryCard building_summary(const AggregateMatrix& agg, BuildingId i) {
  if (i >= agg.n) throw std::out_of_range("unknown building id " + std::to_string(i));
  SummaryCard card;
  card.building = i;
  card.window = agg.window;
  card.internal = agg.at(i, i);
  for (BuildingId j = 0; j < agg.n; ++j) {
    if (j == i) continue;
    const Count out = agg.at(i, j);
    const Count in = agg.at(j, i);
    card.out_total += out;
    card.in_total += in;
    if (out + in > 0) card.partners.push_back({j, out, in});
  }
  card.net = card.in_total - card.out_total;
  std::sort(card.partners.begin(), card.partners.end(), [](const PartnerFlow& a, const PartnerFlow& b) {
    if (a.out + a.in != b.out + b.in) return a.out + a.in > b.out + b.in;
    return a.id < b.id;
  });
  return card;
}

/// Moves the window by `delta` periods, keeping its width and staying inside [0, T−1].
inline TimeWindow shift_window(const TimeWindow& w, long long delta, std::size_t period_count) {
  const long long width = static_cast<long long>(w.width());
  const long long max_lo = static_cast<long long>(period_count) - width;
  const long long lo = std::clamp(static_cast<long long>(w.lo) + delta, 0LL, std::max(max_lo, 0LL));
  return {static_cast<std::size_t>(lo), static_cast<std::size_t>(lo + width - 1)};
}

/// Left-handle drag: lo moves within [0, hi].
inline TimeWindow move_lower_bound(const TimeWindow& w, long long target) {
  return {static_cast<std::size_t>(std::clamp(target, 0LL, static_cast<long long>(w.hi))), w.hi};
}

/// Right-handle drag: hi moves within [lo, T−1].
inline TimeWindow move_upper_bound(const TimeWindow& w, long long target, std::size_t period_count) {
  const long long last = static_cast<long long>(period_count) - 1;
  return {w.lo, static_cast<std::size_t>(std::clamp(target, static_cast<long long>(w.lo), last))};
}

}  // namespace relocviz
