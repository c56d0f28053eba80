#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "relocviz/config.hpp"
#include "relocviz/dataset_io.hpp"
#include "relocviz/engine.hpp"
#include "relocviz/scene.hpp"

namespace relocviz {

using QueryParams = std::multimap<std::string, std::string>;

struct ApiResponse {
  int status = 200;
  std::string body;
};

/// Bad request parameters; becomes an HTTP 400.
class RequestError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline std::optional<std::string> query_value(const QueryParams& q, const std::string& key) {
  auto it = q.find(key);
  if (it == q.end()) return std::nullopt;
  return it->second;
}

inline long long query_int(const std::string& key, std::string_view text) {
  auto v = parse_int<long long>(text);
  if (!v) throw RequestError("invalid parameter '" + key + "'");
  return *v;
}

inline double query_double(const std::string& key, std::string_view text) {
  double v{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) throw RequestError("invalid parameter '" + key + "'");
  return v;
}

inline std::vector<std::string_view> split_on(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  if (s.empty()) return out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = s.find(sep, pos);
    out.push_back(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

inline BuildingId query_building(const Dataset& ds, const std::string& key, std::string_view text) {
  const long long id = query_int(key, text);
  if (id < 0 || static_cast<std::size_t>(id) >= ds.buildings.size()) {
    throw RequestError("unknown building id " + std::string(text));
  }
  return static_cast<BuildingId>(id);
}

inline TimeWindow query_window(const Dataset& ds, const QueryParams& q) {
  const std::size_t periods = ds.series.periods();
  const auto from = query_value(q, "from");
  const auto to = query_value(q, "to");
  const long long lo = from ? query_int("from", *from) : 0;
  const long long hi = to ? query_int("to", *to) : static_cast<long long>(periods) - 1;
  if (lo < 0 || hi < 0 || static_cast<std::size_t>(lo) >= periods || static_cast<std::size_t>(hi) >= periods) {
    throw RequestError("window out of range");
  }
  if (lo > hi) throw RequestError("lo > hi");
  return {static_cast<std::size_t>(lo), static_cast<std::size_t>(hi)};
}

inline ApiResponse error_response(const std::string& message) {
  return {400, nlohmann::ordered_json{{"error", message}}.dump()};
}

}  // namespace detail

/// Decodes `from`, `to`, `threshold`, `selected` (comma-separated ids), `armed` (one id) and
/// `cards` (comma-separated `id:x:y[:pinned]`).
inline ViewState view_from_query(const Dataset& ds, const QueryParams& q) {
  ViewState vs;
  vs.window = detail::query_window(ds, q);
  if (auto t = detail::query_value(q, "threshold")) {
    vs.threshold = detail::query_int("threshold", *t);
    if (vs.threshold < 1) throw RequestError("threshold must be ≥ 1");
  }
  if (auto sel = detail::query_value(q, "selected")) {
    for (auto tok : detail::split_on(*sel, ',')) vs.selected.insert(detail::query_building(ds, "selected", tok));
  }
  if (auto armed = detail::query_value(q, "armed"); armed && !armed->empty()) {
    vs.armed = detail::query_building(ds, "armed", *armed);
  }
  if (auto cards = detail::query_value(q, "cards")) {
    for (auto tok : detail::split_on(*cards, ',')) {
      const auto parts = detail::split_on(tok, ':');
      if (parts.size() != 3 && parts.size() != 4) throw RequestError("invalid parameter 'cards'");
      CardPlacement c;
      c.building = detail::query_building(ds, "cards", parts[0]);
      c.x = detail::query_double("cards", parts[1]);
      c.y = detail::query_double("cards", parts[2]);
      c.pinned = parts.size() == 4 && detail::query_int("cards", parts[3]) != 0;
      vs.cards.push_back(c);
    }
  }
  try {
    validate_view(ds, vs);
  } catch (const ViewError& e) {
    throw RequestError(e.what());
  }
  return vs;
}

inline ApiResponse handle_meta(const Dataset& ds) {
  nlohmann::ordered_json periods = nlohmann::ordered_json::array();
  for (const auto& label : ds.series.period_labels) periods.push_back(label);
  nlohmann::ordered_json buildings = nlohmann::ordered_json::array();
  for (const auto& b : ds.buildings) {
    buildings.push_back({{"id", b.id},
                         {"name", b.name},
                         {"color", to_hex(b.color)},
                         {"anchor", nlohmann::ordered_json::array({b.anchor.x, b.anchor.y})}});
  }
  nlohmann::ordered_json body{{"periods", std::move(periods)},
                              {"buildings", std::move(buildings)},
                              {"canvas", {{"w", ds.width}, {"h", ds.height}}}};
  return {200, body.dump()};
}

inline ApiResponse handle_scene(const Dataset& ds, const RenderParams& params, const QueryParams& q) {
  try {
    const ViewState vs = view_from_query(ds, q);
    return {200, serialize_scene(compile_scene(ds, vs, params.style, params.arc))};
  } catch (const RequestError& e) {
    return detail::error_response(e.what());
  }
}

inline ApiResponse handle_summary(const Dataset& ds, std::string_view id_text, const QueryParams& q) {
  try {
    const BuildingId id = detail::query_building(ds, "id", id_text);
    const TimeWindow w = detail::query_window(ds, q);
    return {200, summary_to_json(building_summary(aggregate(ds.series, w), id)).dump()};
  } catch (const RequestError& e) {
    return detail::error_response(e.what());
  }
}

inline constexpr std::string_view kPlaceholderIndex =
    "<!DOCTYPE html><html><head><title>relocviz</title></head><body>"
    "<p>relocviz service is running. API: <code>/api/meta</code>, <code>/api/scene</code>, "
    "<code>/api/summary/&lt;id&gt;</code>.</p></body></html>";

/// Registers the API on `server`. The dataset and params must outlive the server.
inline void install_routes(httplib::Server& server, const Dataset& ds, const RenderParams& params,
                           const std::optional<std::filesystem::path>& static_dir = std::nullopt) {
  auto reply = [](httplib::Response& res, const ApiResponse& api) {
    res.status = api.status;
    res.set_content(api.body, "application/json");
  };
  auto params_of = [](const httplib::Request& req) { return QueryParams(req.params.begin(), req.params.end()); };

  server.Get("/api/meta", [&ds, reply](const httplib::Request&, httplib::Response& res) { reply(res, handle_meta(ds)); });
  server.Get("/api/scene", [&ds, &params, reply, params_of](const httplib::Request& req, httplib::Response& res) {
    reply(res, handle_scene(ds, params, params_of(req)));
  });
  server.Get(R"(/api/summary/([^/]+))", [&ds, reply, params_of](const httplib::Request& req, httplib::Response& res) {
    reply(res, handle_summary(ds, req.matches[1].str(), params_of(req)));
  });

  if (static_dir && std::filesystem::is_directory(*static_dir)) {
    server.set_mount_point("/", static_dir->string());
  } else {
    server.Get("/", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(std::string(kPlaceholderIndex), "text/html");
    });
  }
}

}  // namespace relocviz
