#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "relocviz/commands.hpp"

namespace {

void add_dataset_options(CLI::App* cmd, relocviz::DatasetPaths& paths) {
  cmd->add_option("--polygons", paths.polygons, "Polygon file (canvas header + RRGGBB x,y ... lines)")
      ->required();
  cmd->add_option("--colors", paths.color_map, "Color-to-building map")->required();
  cmd->add_option("--relocations", paths.relocations, "Periodic relocation matrices")->required();
}

std::vector<std::string> split_list(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& item : raw) {
    std::size_t pos = 0;
    while (pos <= item.size()) {
      const std::size_t comma = item.find(',', pos);
      const std::string tok = item.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      if (!tok.empty()) out.push_back(tok);
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relocviz: periodic relocation flow maps"};
  app.require_subcommand(1);

  std::optional<std::string> config;
  app.add_option("--config", config, "key = value file overriding style and arc parameters");

  relocviz::VectorizeOptions vec;
  auto* vectorize = app.add_subcommand("vectorize", "Convert a P6 PPM map into a polygon file");
  vectorize->add_option("input", vec.input, "Input PPM")->required();
  vectorize->add_option("-o,--output", vec.output, "Output polygon file")->required();
  vectorize->add_option("--snap", vec.snap_tolerance, "Per-channel color snap tolerance")->check(CLI::NonNegativeNumber);
  vectorize->add_option("--min-area", vec.min_area, "Drop regions with fewer pixels");

  relocviz::DatasetPaths validate_paths;
  auto* validate = app.add_subcommand("validate", "Parse and cross-check the three dataset files");
  add_dataset_options(validate, validate_paths);

  relocviz::DatasetPaths render_paths;
  relocviz::RenderOptions render_opt;
  std::vector<std::string> selected_raw;
  std::optional<long long> from, to;
  std::optional<std::string> armed;
  auto* render = app.add_subcommand("render", "Compile a scene and write it as SVG");
  add_dataset_options(render, render_paths);
  render->add_option("--from", from, "First period index (inclusive)");
  render->add_option("--to", to, "Last period index (inclusive)");
  render->add_option("--threshold", render_opt.threshold, "Minimum count for background links");
  render->add_option("--selected", selected_raw, "Selected buildings (ids or names, comma-separated)");
  render->add_option("--armed", armed, "Armed building (id or name)");
  render->add_option("-o,--output", render_opt.output, "Output SVG")->required();

  relocviz::DatasetPaths serve_paths;
  relocviz::ServeOptions serve_opt;
  std::optional<std::string> static_dir;
  auto* serve = app.add_subcommand("serve", "Run the HTTP JSON service");
  add_dataset_options(serve, serve_paths);
  serve->add_option("--host", serve_opt.host, "Listen address");
  serve->add_option("--port", serve_opt.port, "Listen port");
  serve->add_option("--static", static_dir, "Directory of UI assets served at /");

  CLI11_PARSE(app, argc, argv);

  if (*vectorize) return relocviz::cmd_vectorize(vec, std::cout, std::cerr);
  if (*validate) return relocviz::cmd_validate(validate_paths, std::cout, std::cerr);
  if (*render) {
    render_opt.from = from;
    render_opt.to = to;
    render_opt.armed = armed;
    render_opt.selected = split_list(selected_raw);
    if (config) render_opt.config = *config;
    return relocviz::cmd_render(render_paths, render_opt, std::cout, std::cerr);
  }
  if (*serve) {
    if (config) serve_opt.config = *config;
    if (static_dir) serve_opt.static_dir = *static_dir;
    return relocviz::cmd_serve(serve_paths, serve_opt, std::cout, std::cerr);
  }
  return 0;
}
