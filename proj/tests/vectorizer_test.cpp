#include <gtest/gtest.h>

#include <random>
#include <set>
#include <sstream>

#include "test_support.hpp"

namespace relocviz {
namespace {

constexpr Color kRed{255, 0, 0}, kBlue{0, 0, 255}, kGreen{0, 255, 0};

PixelRegion region_of(std::vector<LatticePoint> pixels) {
  std::sort(pixels.begin(), pixels.end(), [](auto a, auto b) { return a.y != b.y ? a.y < b.y : a.x < b.x; });
  return {kRed, std::move(pixels)};
}

TEST(ExtractRegions, UniformImage) {
  const auto regions = extract_regions(RasterImage(4, 4, kRed));
  ASSERT_EQ(regions.size(), 1u);
  EXPECT_EQ(regions[0].pixels.size(), 16u);
}

TEST(ExtractRegions, TwoHalves) {
  RasterImage img(4, 4, kRed);
  for (int y = 0; y < 4; ++y)
    for (int x = 2; x < 4; ++x) img.at(x, y) = kBlue;
  const auto regions = extract_regions(img);
  ASSERT_EQ(regions.size(), 2u);
  EXPECT_EQ(regions[0].color, kRed);
  EXPECT_EQ(regions[0].pixels.size(), 8u);
  EXPECT_EQ(regions[1].color, kBlue);
  EXPECT_EQ(regions[1].pixels.size(), 8u);
}

// Hand enumeration: the off-by-one centre pixel merges only when the tolerance admits it.
TEST(ExtractRegions, SnapTolerance) {
  RasterImage img(3, 3, kRed);
  img.at(1, 1) = {254, 0, 0};
  EXPECT_EQ(extract_regions(img, 2).size(), 1u);
  EXPECT_EQ(extract_regions(img, 2)[0].color, kRed);
  EXPECT_EQ(extract_regions(img, 0).size(), 2u);
}

TEST(ExtractRegions, DiagonalPixelsAreSeparate) {
  RasterImage img(2, 2, kBlue);
  img.at(0, 0) = kRed;
  img.at(1, 1) = kRed;
  EXPECT_EQ(extract_regions(img).size(), 4u);
}

TEST(ExtractRegions, PartitionProperty) {
  std::mt19937 rng(3);
  for (int iter = 0; iter < 40; ++iter) {
    const auto img = testing::random_image(rng);
    std::set<LatticePoint> seen;
    for (const auto& r : extract_regions(img, static_cast<int>(rng() % 3))) {
      ASSERT_FALSE(r.pixels.empty());
      for (const auto& p : r.pixels) ASSERT_TRUE(seen.insert(p).second) << "pixel in two regions";
    }
    EXPECT_EQ(seen.size(), img.pixels.size());
  }
}

TEST(TraceBoundary, SinglePixel) {
  EXPECT_EQ(trace_boundary(region_of({{0, 0}})), (Polygon{{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
}

TEST(TraceBoundary, HorizontalPair) {
  EXPECT_EQ(trace_boundary(region_of({{0, 0}, {1, 0}})), (Polygon{{0, 0}, {2, 0}, {2, 1}, {0, 1}}));
}

// Edge-following over the three cells by hand gives this six-vertex outline.
TEST(TraceBoundary, LShape) {
  EXPECT_EQ(trace_boundary(region_of({{0, 0}, {0, 1}, {1, 1}})),
            (Polygon{{0, 0}, {1, 0}, {1, 1}, {2, 1}, {2, 2}, {0, 2}}));
}

TEST(TraceBoundary, StartsTopLeftAndRunsClockwise) {
  const auto poly = trace_boundary(region_of({{3, 2}, {2, 3}, {3, 3}, {4, 3}}));
  EXPECT_EQ(poly.front(), (LatticePoint{3, 2}));
  EXPECT_GT(signed_area(poly), 0.0);  // positive shoelace = clockwise on a y-down screen
}

// x x x
// x . x    the hole (1,1) touches exterior pixel (2,2) only at lattice vertex (2,2)
// x x .
TEST(TraceBoundary, PinchedRing) {
  const std::vector<LatticePoint> px{{0, 0}, {1, 0}, {2, 0}, {0, 1}, {2, 1}, {0, 2}, {1, 2}};
  const auto poly = trace_boundary(region_of(px));
  EXPECT_EQ(poly, (Polygon{{0, 0}, {3, 0}, {3, 2}, {2, 2}, {2, 3}, {0, 3}}));
  EXPECT_TRUE(is_simple(poly));
  RasterImage expected(3, 3, kRed);
  expected.at(2, 2) = Color{};
  EXPECT_EQ(testing::pixel_mismatches(rasterize_oracle(PolygonSet{3, 3, {{poly, kRed}}}), expected), 0u);
}

TEST(SimplifyCollinear, DropsMiddleVertex) {
  EXPECT_EQ(simplify_collinear({{0, 0}, {1, 0}, {2, 0}, {2, 1}, {0, 1}}), (Polygon{{0, 0}, {2, 0}, {2, 1}, {0, 1}}));
}

TEST(SimplifyCollinear, Fixpoints) {
  const Polygon square{{0, 0}, {4, 0}, {4, 4}, {0, 4}};
  EXPECT_EQ(simplify_collinear(square), square);
  const Polygon stairs{{0, 0}, {1, 0}, {1, 1}, {2, 1}, {2, 2}, {0, 2}};
  EXPECT_EQ(simplify_collinear(stairs), stairs);
}

TEST(SimplifyCollinear, HandlesWrapAround) {
  EXPECT_EQ(simplify_collinear({{1, 0}, {2, 0}, {2, 1}, {0, 1}, {0, 0}}), (Polygon{{2, 0}, {2, 1}, {0, 1}, {0, 0}}));
}

TEST(Vectorize, UniformImage) {
  const auto polys = vectorize(RasterImage(8, 8, kGreen), 0, 1);
  ASSERT_EQ(polys.entries.size(), 1u);
  EXPECT_EQ(polys.entries[0].polygon.size(), 4u);
  EXPECT_EQ(area(polys.entries[0].polygon), 64.0);
}

TEST(Vectorize, PatchPaintsAfterBackground) {
  RasterImage img(8, 8, kGreen);
  for (int y = 3; y < 5; ++y)
    for (int x = 3; x < 5; ++x) img.at(x, y) = kBlue;
  const auto polys = vectorize(img, 0, 1);
  ASSERT_EQ(polys.entries.size(), 2u);
  EXPECT_EQ(polys.entries[0].color, kGreen);
  EXPECT_EQ(polys.entries[1].color, kBlue);
  EXPECT_EQ(polys.entries[1].polygon, (Polygon{{3, 3}, {5, 3}, {5, 5}, {3, 5}}));
  EXPECT_EQ(rasterize_oracle(polys), img);

  const auto filtered = vectorize(img, 0, 5);
  ASSERT_EQ(filtered.entries.size(), 1u);
  EXPECT_EQ(filtered.entries[0].color, kGreen);
}

// A thin ring around a larger hole: pixel count alone would paint the ring last and cover the hole.
TEST(Vectorize, RingAroundLargerHole) {
  RasterImage img(10, 10, kRed);
  for (int y = 1; y < 9; ++y)
    for (int x = 1; x < 9; ++x) img.at(x, y) = kBlue;
  const auto polys = vectorize(img, 0, 1);
  ASSERT_EQ(polys.entries.size(), 2u);
  EXPECT_EQ(polys.entries[0].color, kRed);
  EXPECT_EQ(testing::pixel_mismatches(rasterize_oracle(polys), img), 0u);
}

TEST(Vectorize, RoundTripProperty) {
  std::mt19937 rng(2024);
  for (int iter = 0; iter < 60; ++iter) {
    const auto img = testing::random_image(rng);
    const auto polys = vectorize(img, 0, 1);
    ASSERT_EQ(testing::pixel_mismatches(rasterize_oracle(polys), img), 0u) << "iteration " << iter;
    for (const auto& e : polys.entries) {
      ASSERT_GE(e.polygon.size(), 4u);
      ASSERT_EQ(e.polygon.size() % 2, 0u);
      ASSERT_EQ(simplify_collinear(e.polygon), e.polygon);
      for (std::size_t k = 0; k < e.polygon.size(); ++k) {
        const auto a = e.polygon[k], b = e.polygon[(k + 1) % e.polygon.size()];
        ASSERT_TRUE(a.x == b.x || a.y == b.y) << "non-rectilinear edge";
      }
    }
  }
}

TEST(Vectorize, Deterministic) {
  std::mt19937 rng(99);
  const auto img = testing::random_image(rng);
  EXPECT_EQ(to_text(vectorize(img, 1, 1)), to_text(vectorize(img, 1, 1)));
}

TEST(RasterizeOracle, EmptySetIsBlack) {
  EXPECT_EQ(rasterize_oracle(PolygonSet{2, 2, {}}), RasterImage(2, 2));
}

TEST(RasterizeOracle, SingleCell) {
  const auto img = rasterize_oracle(PolygonSet{3, 3, {{{{1, 1}, {2, 1}, {2, 2}, {1, 2}}, kRed}}});
  for (int y = 0; y < 3; ++y)
    for (int x = 0; x < 3; ++x) EXPECT_EQ(img.at(x, y), (x == 1 && y == 1) ? kRed : Color{}) << x << "," << y;
}

TEST(Ppm, RoundTrip) {
  std::mt19937 rng(5);
  const auto img = testing::random_image(rng);
  std::stringstream ss;
  write_ppm(ss, img);
  EXPECT_EQ(read_ppm(ss), img);
}

TEST(Ppm, HeaderComments) {
  std::stringstream ss;
  ss << "P6\n# made by hand\n1 1\n255\n";
  ss.write("\x01\x02\x03", 3);
  const auto img = read_ppm(ss);
  EXPECT_EQ(img.at(0, 0), (Color{1, 2, 3}));
}

TEST(Ppm, Rejections) {
  std::stringstream truncated("P6\n2 2\n255\nabc");
  EXPECT_THROW(read_ppm(truncated), PpmError);
  std::stringstream ascii("P3\n1 1\n255\n0 0 0\n");
  EXPECT_THROW(read_ppm(ascii), PpmError);
  std::stringstream maxval("P6\n1 1\n65535\n");
  EXPECT_THROW(read_ppm(maxval), PpmError);
}

}  // namespace
}  // namespace relocviz
