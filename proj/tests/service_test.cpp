#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "test_support.hpp"

namespace relocviz {
namespace {

using testing::kA;
using testing::kB;
using testing::kC;

const Dataset& fixture() {
  static const Dataset ds = testing::fixture_dataset();
  return ds;
}

TEST(HandleMeta, ListsPeriodsAndBuildings) {
  const auto res = handle_meta(fixture());
  ASSERT_EQ(res.status, 200);
  const auto j = nlohmann::json::parse(res.body);
  EXPECT_EQ(j["periods"], (nlohmann::json{"P1", "P2", "P3", "P4"}));
  ASSERT_EQ(j["buildings"].size(), 3u);
  EXPECT_EQ(j["buildings"][0]["name"], "A");
  EXPECT_EQ(j["buildings"][0]["color"], "FF0000");
  EXPECT_EQ(j["canvas"]["w"], 64);
}

TEST(HandleScene, MatchesDirectCompilation) {
  const QueryParams q{{"from", "0"}, {"to", "1"}, {"threshold", "3"}, {"selected", "0"}};
  const auto res = handle_scene(fixture(), {}, q);
  ASSERT_EQ(res.status, 200);
  const ViewState vs{{0, 1}, 3, {kA}, std::nullopt, {}};
  EXPECT_EQ(res.body, serialize_scene(compile_scene(fixture(), vs, {}, {})));
}

TEST(HandleScene, DefaultsToFullWindow) {
  const auto res = handle_scene(fixture(), {}, {});
  ASSERT_EQ(res.status, 200);
  const ViewState vs{{0, 3}, 1, {}, std::nullopt, {}};
  EXPECT_EQ(res.body, serialize_scene(compile_scene(fixture(), vs, {}, {})));
}

TEST(HandleScene, CardPlacementsRoundTrip) {
  const QueryParams q{{"selected", "0,2"}, {"cards", "2:5.5:6:1"}};
  const auto res = handle_scene(fixture(), {}, q);
  ASSERT_EQ(res.status, 200);
  const ViewState vs{{0, 3}, 1, {kA, kC}, std::nullopt, {{kC, 5.5, 6.0, true}}};
  EXPECT_EQ(res.body, serialize_scene(compile_scene(fixture(), vs, {}, {})));
}

struct BadQuery {
  QueryParams q;
  std::string error;
};

TEST(HandleScene, RejectsBadQueries) {
  const std::vector<BadQuery> cases{
      {{{"from", "9"}, {"to", "1"}}, "window out of range"},
      {{{"from", "3"}, {"to", "1"}}, "lo > hi"},
      {{{"from", "x"}}, "invalid parameter 'from'"},
      {{{"selected", "7"}}, "unknown building id 7"},
      {{{"armed", "-1"}}, "unknown building id -1"},
      {{{"threshold", "0"}}, "threshold must be ≥ 1"},
      {{{"cards", "1:2"}}, "invalid parameter 'cards'"},
  };
  for (const auto& c : cases) {
    const auto res = handle_scene(fixture(), {}, c.q);
    EXPECT_EQ(res.status, 400);
    EXPECT_EQ(nlohmann::json::parse(res.body), (nlohmann::json{{"error", c.error}}));
  }
  // A card for a building that is not selected.
  const auto res = handle_scene(fixture(), {}, {{"cards", "1:0:0"}});
  EXPECT_EQ(res.status, 400);
  EXPECT_TRUE(nlohmann::json::parse(res.body).contains("error"));
}

TEST(HandleSummary, FixtureA) {
  const auto res = handle_summary(fixture(), "0", {});
  ASSERT_EQ(res.status, 200);
  const auto j = nlohmann::json::parse(res.body);
  EXPECT_EQ(j["building"], kA);
  EXPECT_EQ(j["out"], 10);
  EXPECT_EQ(j["in"], 5);
  EXPECT_EQ(j["net"], -5);
  EXPECT_EQ(j["partners"].size(), 2u);
  EXPECT_EQ(handle_summary(fixture(), "5", {}).status, 400);
  EXPECT_EQ(handle_summary(fixture(), "1", {{"from", "2"}, {"to", "1"}}).status, 400);
}

TEST(LiveService, EndpointsOverHttp) {
  testing::LiveServer server(fixture(), {});
  auto cli = server.client();

  auto meta = cli.Get("/api/meta");
  ASSERT_TRUE(meta);
  EXPECT_EQ(meta->status, 200);
  EXPECT_EQ(meta->body, handle_meta(fixture()).body);
  EXPECT_EQ(meta->get_header_value("Content-Type"), "application/json");

  auto scene = cli.Get("/api/scene?from=0&to=3&threshold=2&selected=1&armed=2");
  ASSERT_TRUE(scene);
  EXPECT_EQ(scene->status, 200);
  const ViewState vs{{0, 3}, 2, {kB}, kC, {}};
  EXPECT_EQ(scene->body, serialize_scene(compile_scene(fixture(), vs, {}, {})));

  auto bad = cli.Get("/api/scene?from=9&to=1");
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->status, 400);
  EXPECT_EQ(nlohmann::json::parse(bad->body), (nlohmann::json{{"error", "window out of range"}}));

  auto summary = cli.Get("/api/summary/2?from=3&to=3");
  ASSERT_TRUE(summary);
  EXPECT_EQ(summary->status, 200);
  EXPECT_EQ(nlohmann::json::parse(summary->body)["in"], 10);

  auto index = cli.Get("/");
  ASSERT_TRUE(index);
  EXPECT_EQ(index->status, 200);
  EXPECT_NE(index->body.find("/api/scene"), std::string::npos);
}

}  // namespace
}  // namespace relocviz
