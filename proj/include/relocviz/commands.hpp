#pragma once

#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "relocviz/config.hpp"
#include "relocviz/dataset_io.hpp"
#include "relocviz/engine.hpp"
#include "relocviz/scene.hpp"
#include "relocviz/service.hpp"
#include "relocviz/vectorizer.hpp"

namespace relocviz {

struct DatasetPaths {
  std::filesystem::path polygons;
  std::filesystem::path color_map;
  std::filesystem::path relocations;
};

/// Raised by load_dataset_files; each message is prefixed with the offending file.
class DatasetLoadError : public std::runtime_error {
 public:
  explicit DatasetLoadError(std::vector<std::string> messages)
      : std::runtime_error(detail::join_lines(messages, [](const std::string& s) { return s; })),
        messages_(std::move(messages)) {}

  const std::vector<std::string>& messages() const { return messages_; }

 private:
  std::vector<std::string> messages_;
};

inline std::optional<std::string> read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline Dataset load_dataset_files(const DatasetPaths& paths) {
  std::vector<std::string> messages;

  auto parse = [&messages](const std::filesystem::path& path, auto&& parser) -> std::optional<decltype(parser(""))> {
    auto text = read_text_file(path);
    if (!text) {
      messages.push_back(path.string() + ": cannot read file");
      return std::nullopt;
    }
    try {
      return parser(*text);
    } catch (const ParseError& e) {
      for (const auto& d : e.diagnostics()) {
        messages.push_back(path.string() + (d.line ? ":" + std::to_string(d.line) : std::string()) + ": " +
                           d.message);
      }
      return std::nullopt;
    }
  };

  auto polys = parse(paths.polygons, [](std::string_view t) { return parse_polygon_file(t); });
  auto cmap = parse(paths.color_map, [](std::string_view t) { return parse_color_map(t); });
  auto series = parse(paths.relocations, [](std::string_view t) { return parse_relocation_file(t); });
  if (!messages.empty()) throw DatasetLoadError(std::move(messages));

  try {
    return load_dataset(*polys, *cmap, *series);
  } catch (const ValidationError& e) {
    for (const auto& issue : e.issues()) messages.push_back("dataset: " + issue);
    throw DatasetLoadError(std::move(messages));
  }
}

inline RenderParams load_render_params(const std::optional<std::filesystem::path>& config_path) {
  if (!config_path) return {};
  auto text = read_text_file(*config_path);
  if (!text) throw ConfigError(config_path->string() + ": cannot read file");
  try {
    return parse_render_config(*text);
  } catch (const ConfigError& e) {
    throw ConfigError(config_path->string() + ": " + e.what());
  }
}

// ─── vectorize ──────────────────────────────────────────────────────────────

struct VectorizeOptions {
  std::filesystem::path input;
  std::filesystem::path output;
  int snap_tolerance = 0;
  std::size_t min_area = 1;
};

inline int cmd_vectorize(const VectorizeOptions& opt, std::ostream& out, std::ostream& err) {
  std::ifstream in(opt.input, std::ios::binary);
  if (!in) {
    err << opt.input.string() << ": cannot open file\n";
    return 2;
  }
  RasterImage img;
  try {
    img = read_ppm(in);
  } catch (const PpmError& e) {
    err << opt.input.string() << ": " << e.what() << "\n";
    return 2;
  }
  const PolygonSet polys = vectorize(img, opt.snap_tolerance, opt.min_area);
  std::ofstream os(opt.output, std::ios::binary);
  os << "# vectorized from " << opt.input.filename().string() << "\n" << to_text(polys);
  if (!os) {
    err << opt.output.string() << ": cannot write file\n";
    return 2;
  }
  out << polys.entries.size() << " regions\n";
  return 0;
}

// ─── validate ───────────────────────────────────────────────────────────────

inline int cmd_validate(const DatasetPaths& paths, std::ostream& out, std::ostream& err) {
  try {
    const Dataset ds = load_dataset_files(paths);
    Count total = 0;
    for (Count t : period_totals(ds.series)) total += t;
    out << ds.buildings.size() << " buildings, " << ds.series.periods() << " periods, " << total << " relocations\n";
    return 0;
  } catch (const DatasetLoadError& e) {
    for (const auto& m : e.messages()) err << m << "\n";
    return 1;
  }
}

// ─── render ─────────────────────────────────────────────────────────────────

struct RenderOptions {
  std::optional<long long> from;
  std::optional<long long> to;
  long long threshold = 1;
  std::vector<std::string> selected;  // ids or names
  std::optional<std::string> armed;   // id or name
  std::filesystem::path output;
  std::optional<std::filesystem::path> config;
};

namespace detail {

inline BuildingId resolve_building(const Dataset& ds, const std::string& token) {
  if (auto id = ds.find_building(token)) return *id;
  if (auto n = parse_int<long long>(token); n && *n >= 0 && static_cast<std::size_t>(*n) < ds.buildings.size()) {
    return static_cast<BuildingId>(*n);
  }
  throw ViewError("unknown building '" + token + "'");
}

}  // namespace detail

inline int cmd_render(const DatasetPaths& paths, const RenderOptions& opt, std::ostream& out, std::ostream& err) {
  Dataset ds;
  RenderParams params;
  try {
    ds = load_dataset_files(paths);
    params = load_render_params(opt.config);
  } catch (const DatasetLoadError& e) {
    for (const auto& m : e.messages()) err << m << "\n";
    return 1;
  } catch (const ConfigError& e) {
    err << e.what() << "\n";
    return 1;
  }

  std::string svg;
  try {
    const long long periods = static_cast<long long>(ds.series.periods());
    const long long lo = opt.from.value_or(0);
    const long long hi = opt.to.value_or(periods - 1);
    if (lo < 0 || hi < 0 || lo >= periods || hi >= periods) throw ViewError("window out of range");
    if (lo > hi) throw ViewError("lo > hi");
    ViewState vs;
    vs.window = {static_cast<std::size_t>(lo), static_cast<std::size_t>(hi)};
    vs.threshold = opt.threshold;
    for (const auto& tok : opt.selected) vs.selected.insert(detail::resolve_building(ds, tok));
    if (opt.armed) vs.armed = detail::resolve_building(ds, *opt.armed);
    svg = scene_to_svg(compile_scene(ds, vs, params.style, params.arc));
  } catch (const ViewError& e) {
    err << e.what() << "\n";
    return 1;
  }

  std::ofstream os(opt.output, std::ios::binary);
  os << svg;
  if (!os) {
    err << opt.output.string() << ": cannot write file\n";
    return 2;
  }
  out << "wrote " << opt.output.string() << "\n";
  return 0;
}

// ─── serve ──────────────────────────────────────────────────────────────────

struct ServeOptions {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::optional<std::filesystem::path> static_dir;
  std::optional<std::filesystem::path> config;
};

inline int cmd_serve(const DatasetPaths& paths, const ServeOptions& opt, std::ostream& out, std::ostream& err) {
  Dataset ds;
  RenderParams params;
  try {
    ds = load_dataset_files(paths);
    params = load_render_params(opt.config);
  } catch (const DatasetLoadError& e) {
    for (const auto& m : e.messages()) err << m << "\n";
    return 1;
  } catch (const ConfigError& e) {
    err << e.what() << "\n";
    return 1;
  }

  httplib::Server server;
  install_routes(server, ds, params, opt.static_dir);
  if (!server.bind_to_port(opt.host, opt.port)) {
    err << "cannot listen on " << opt.host << ":" << opt.port << " (port busy or unavailable)\n";
    return 1;
  }
  out << "serving " << ds.buildings.size() << " buildings, " << ds.series.periods() << " periods on http://"
      << opt.host << ":" << opt.port << "/\n"
      << std::flush;
  return server.listen_after_bind() ? 0 : 1;
}

}  // namespace relocviz
