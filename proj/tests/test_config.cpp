#include <gtest/gtest.h>

#include <fstream>

#include "fixture.hpp"
#include "rrv/config.hpp"
#include "rrv/error.hpp"

using namespace rrv;
using nlohmann::json;

namespace {

json shipped_json() {
  std::ifstream in(fx::data_path("talpiot.json"));
  return json::parse(in);
}

ErrorCode parse_error(const json& j) {
  try {
    parse_project(j, RRV_DATA_DIR);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "accepted";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Config, ShippedMatchesFixture) {
  const auto pc = fx::shipped();
  const auto a = fx::analysis();
  EXPECT_EQ(pc.analysis.lists.male.entries, a.lists.male.entries);
  EXPECT_EQ(pc.analysis.lists.female.entries, a.lists.female.entries);
  ASSERT_EQ(pc.analysis.bonuses.rules.size(), 1u);
  EXPECT_EQ(pc.analysis.bonuses.rules[0], a.bonuses.rules[0]);
  EXPECT_EQ(pc.analysis.configuration.edges, a.configuration.edges);
  EXPECT_EQ(pc.analysis.filter.name(), "distinct_candidates");
  EXPECT_EQ(cluster_rr(pc.analysis.configuration, pc.analysis.lists, pc.analysis.lexicon, pc.analysis.bonuses).cluster_rr,
            cluster_rr(a.configuration, a.lists, a.lexicon, a.bonuses).cluster_rr);
  EXPECT_EQ(pc.analysis.trials(), 1100u);
  EXPECT_DOUBLE_EQ(pc.inference.alpha.alpha, 1.0 / 1821000.0);
  EXPECT_EQ(pc.scenarios.size(), 4u);
  EXPECT_EQ(pc.sensitivity.modifications.size(), 4u);
  EXPECT_EQ(pc.simulation.worlds.size(), 2u);
  EXPECT_FALSE(pc.assumptions.empty());
  EXPECT_NE(pc.config_hash, 0u);
  EXPECT_NE(pc.lexicon_hash, 0u);
}

TEST(Config, Probabilities) {
  EXPECT_DOUBLE_EQ(parse_probability("1/1821000"), 1.0 / 1821000.0);
  EXPECT_DOUBLE_EQ(parse_probability(5.89e-7), 5.89e-7);
  EXPECT_THROW(parse_probability("1/0"), Error);
  EXPECT_THROW(parse_probability("abc"), Error);
}

TEST(Config, Entries) {
  EXPECT_EQ(parse_entry(json{{"generic", "Yoseph"}}), generic_entry("Yoseph"));
  EXPECT_EQ(parse_entry(json{{"generic", "Yoseph"}, {"rendition", "Yoseh"}}), rendition_entry("Yoseph", "Yoseh"));
}

TEST(Config, SchemaErrors) {
  auto j = shipped_json();
  j["configuration"]["edges"].push_back({{"father", 0}, {"son", 99}});
  EXPECT_EQ(parse_error(j), ErrorCode::InvalidConfiguration);
  j = shipped_json();
  j.erase("configuration");
  EXPECT_EQ(parse_error(j), ErrorCode::InvalidConfiguration);
  j = shipped_json();
  j["sensitivity"]["modifications"] = json::array({{{"kind", "explode"}}});
  EXPECT_EQ(parse_error(j), ErrorCode::InvalidConfiguration);
  j = shipped_json();
  j["assumptions"] = json::array({1, 2});
  EXPECT_EQ(parse_error(j), ErrorCode::InvalidConfiguration);
  j = shipped_json();
  j["lists"]["male"]["entries"].push_back({{"generic", "Yeshua"}});
  EXPECT_EQ(parse_error(j), ErrorCode::DuplicateKey);
}

TEST(Config, ListsJsonIsCanonical) {
  const auto pc = fx::shipped();
  EXPECT_EQ(lists_json(pc.analysis.lists, pc.analysis.bonuses).dump(),
            lists_json(fx::lists(), fx::bonuses()).dump());
}
