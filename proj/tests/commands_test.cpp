#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "test_support.hpp"

namespace relocviz {
namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("relocviz_test_" + std::to_string(std::random_device{}()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::string slurp(const fs::path& p) { return *read_text_file(p); }

void write_image(const fs::path& p, const RasterImage& img) {
  std::ofstream os(p, std::ios::binary);
  write_ppm(os, img);
}

TEST(CmdVectorize, UniformImage) {
  TempDir tmp;
  write_image(tmp.path() / "in.ppm", RasterImage(8, 8, {10, 20, 30}));
  std::ostringstream out, err;
  const int rc = cmd_vectorize({tmp.path() / "in.ppm", tmp.path() / "out.poly", 0, 1}, out, err);
  ASSERT_EQ(rc, 0) << err.str();
  EXPECT_EQ(out.str(), "1 regions\n");
  const auto polys = parse_polygon_file(slurp(tmp.path() / "out.poly"));
  ASSERT_EQ(polys.entries.size(), 1u);
  EXPECT_EQ(polys.entries[0].polygon, (Polygon{{0, 0}, {8, 0}, {8, 8}, {0, 8}}));
  EXPECT_EQ(polys.entries[0].color, (Color{10, 20, 30}));
}

TEST(CmdVectorize, OutputParsesBackAndRasterizes) {
  TempDir tmp;
  std::mt19937 rng(77);
  const auto img = testing::random_image(rng);
  write_image(tmp.path() / "in.ppm", img);
  std::ostringstream out, err;
  ASSERT_EQ(cmd_vectorize({tmp.path() / "in.ppm", tmp.path() / "out.poly", 0, 1}, out, err), 0) << err.str();
  const auto polys = parse_polygon_file(slurp(tmp.path() / "out.poly"));
  EXPECT_EQ(testing::pixel_mismatches(rasterize_oracle(polys), img), 0u);
}

TEST(CmdVectorize, MinAreaDropsSmallRegions) {
  TempDir tmp;
  RasterImage img(8, 8, {0, 0, 0});
  img.at(2, 2) = {255, 255, 255};
  write_image(tmp.path() / "in.ppm", img);
  std::ostringstream out, err;
  ASSERT_EQ(cmd_vectorize({tmp.path() / "in.ppm", tmp.path() / "out.poly", 0, 2}, out, err), 0);
  EXPECT_EQ(out.str(), "1 regions\n");
}

TEST(CmdVectorize, TruncatedInput) {
  TempDir tmp;
  {
    std::ofstream os(tmp.path() / "bad.ppm", std::ios::binary);
    os << "P6\n4 4\n255\nabc";
  }
  std::ostringstream out, err;
  EXPECT_EQ(cmd_vectorize({tmp.path() / "bad.ppm", tmp.path() / "out.poly", 0, 1}, out, err), 2);
  EXPECT_NE(err.str().find("bad.ppm"), std::string::npos);
  EXPECT_EQ(cmd_vectorize({tmp.path() / "missing.ppm", tmp.path() / "out.poly", 0, 1}, out, err), 2);
}

TEST(CmdValidate, Fixture) {
  std::ostringstream out, err;
  EXPECT_EQ(cmd_validate(testing::fixture_paths(), out, err), 0) << err.str();
  EXPECT_EQ(out.str(), "3 buildings, 4 periods, 25 relocations\n");
}

TEST(CmdValidate, ColorWithoutPolygon) {
  auto paths = testing::fixture_paths();
  paths.color_map = testing::data_dir() / "missing_building.cmap";
  std::ostringstream out, err;
  EXPECT_EQ(cmd_validate(paths, out, err), 1);
  EXPECT_NE(err.str().find("FFFF00"), std::string::npos);
}

TEST(CmdValidate, ReportsLineNumber) {
  auto paths = testing::fixture_paths();
  paths.polygons = testing::data_dir() / "bad_polygon.poly";
  std::ostringstream out, err;
  EXPECT_EQ(cmd_validate(paths, out, err), 1);
  EXPECT_NE(err.str().find("bad_polygon.poly:2:"), std::string::npos) << err.str();
}

TEST(CmdRender, WritesDeterministicSvg) {
  TempDir tmp;
  RenderOptions opt;
  opt.threshold = 2;
  opt.selected = {"A", "2"};
  opt.armed = "B";
  opt.output = tmp.path() / "a.svg";
  std::ostringstream out, err;
  ASSERT_EQ(cmd_render(testing::fixture_paths(), opt, out, err), 0) << err.str();
  opt.output = tmp.path() / "b.svg";
  ASSERT_EQ(cmd_render(testing::fixture_paths(), opt, out, err), 0);
  EXPECT_EQ(slurp(tmp.path() / "a.svg"), slurp(tmp.path() / "b.svg"));

  const Dataset ds = testing::fixture_dataset();
  const ViewState vs{{0, 3}, 2, {testing::kA, testing::kC}, testing::kB, {}};
  EXPECT_EQ(slurp(tmp.path() / "a.svg"), scene_to_svg(compile_scene(ds, vs, {}, {})));
}

TEST(CmdRender, RejectsInvertedWindow) {
  TempDir tmp;
  RenderOptions opt;
  opt.from = 3;
  opt.to = 2;
  opt.output = tmp.path() / "x.svg";
  std::ostringstream out, err;
  EXPECT_EQ(cmd_render(testing::fixture_paths(), opt, out, err), 1);
  EXPECT_EQ(err.str(), "lo > hi\n");
  EXPECT_FALSE(fs::exists(opt.output));
}

TEST(CmdRender, RejectsUnknownBuilding) {
  TempDir tmp;
  RenderOptions opt;
  opt.selected = {"Z"};
  opt.output = tmp.path() / "x.svg";
  std::ostringstream out, err;
  EXPECT_EQ(cmd_render(testing::fixture_paths(), opt, out, err), 1);
  EXPECT_NE(err.str().find("'Z'"), std::string::npos);
}

TEST(CmdRender, ConfigOverrides) {
  TempDir tmp;
  RenderOptions opt;
  opt.selected = {"A"};
  opt.config = testing::data_dir() / "style.conf";
  opt.output = tmp.path() / "x.svg";
  std::ostringstream out, err;
  ASSERT_EQ(cmd_render(testing::fixture_paths(), opt, out, err), 0) << err.str();

  const RenderParams params = load_render_params(opt.config);
  EXPECT_EQ(params.style.base_saturation, 0.2);
  EXPECT_EQ(params.style.top_saturation, 0.8);
  EXPECT_EQ(params.arc.bulge, 0.25);
  const Dataset ds = testing::fixture_dataset();
  const ViewState vs{{0, 3}, 1, {testing::kA}, std::nullopt, {}};
  EXPECT_EQ(slurp(opt.output), scene_to_svg(compile_scene(ds, vs, params.style, params.arc)));
  EXPECT_NE(slurp(opt.output), scene_to_svg(compile_scene(ds, vs, {}, {})));
}

TEST(RenderConfig, Rejections) {
  EXPECT_THROW(parse_render_config("nonsense = 1"), ConfigError);
  EXPECT_THROW(parse_render_config("s0 = abc"), ConfigError);
  EXPECT_THROW(parse_render_config("s0 = 0.95"), ConfigError);
  EXPECT_THROW(parse_render_config("no equals sign"), ConfigError);
  EXPECT_NO_THROW(parse_render_config("# only a comment\n\n"));
}

}  // namespace
}  // namespace relocviz
