#include <string>

#include <gtest/gtest.h>

#include "netdim/config.hpp"

using namespace netdim;

namespace {

std::vector<std::string> fields(const ConfigError &e) {
  std::vector<std::string> out;
  for (const auto &issue : e.issues())
    out.push_back(issue.field);
  return out;
}

std::vector<std::string> fields_of(const std::string &yaml) {
  try {
    load_config_text(yaml);
  } catch (const ConfigError &e) {
    return fields(e);
  }
  return {};
}

} // namespace

TEST(Yaml, Scalars) {
  const Json j = parse_yaml("a: 1\nb: -2\nc: 2.5\nd: 1e-6\ne: true\nf: ~\ng: \"3\"\nh: text\n");
  EXPECT_TRUE(j["a"].is_number_unsigned());
  EXPECT_TRUE(j["b"].is_number_integer());
  EXPECT_EQ(j["b"].get<int>(), -2);
  EXPECT_TRUE(j["c"].is_number_float());
  EXPECT_EQ(j["d"].get<double>(), 1e-6);
  EXPECT_EQ(j["e"], true);
  EXPECT_TRUE(j["f"].is_null());
  EXPECT_TRUE(j["g"].is_string());
  EXPECT_EQ(j["h"], "text");
}

TEST(Yaml, EmptyDocumentIsNoOverride) {
  EXPECT_EQ(load_config_text(""), RunConfig{});
  EXPECT_EQ(load_config_text("# nothing\n"), RunConfig{});
}

TEST(Yaml, SyntaxErrorIsAConfigError) {
  try {
    load_config_text("factors: [1, 2\n");
    FAIL();
  } catch (const ConfigError &e) {
    EXPECT_EQ(e.issues().front().field, "(yaml)");
  }
}

TEST(Yaml, DefaultsRoundTrip) {
  const std::string text = default_config_yaml();
  EXPECT_EQ(load_config_text(text), RunConfig{});
  EXPECT_EQ(to_yaml(parse_yaml(text)), text);
  EXPECT_EQ(parse_yaml(text), to_json(RunConfig{}));
}

TEST(Yaml, NumbersRoundTripExactly) {
  for (double v : {0.1, 1.0 / 3, 6.5e7, 1e-6, 2.5, 1e300, -0.018})
    EXPECT_EQ(parse_yaml(to_yaml(Json{{"v", v}}))["v"].get<double>(), v);
}

TEST(Config, PartialOverride) {
  const RunConfig c = load_config_text("factors:\n  pue: 1.5\ncatalog:\n  onu:\n    power_w: 3\n");
  RunConfig expected;
  expected.model.factors.pue = 1.5;
  expected.model.catalog.onu.static_power_w = 3;
  EXPECT_EQ(c, expected);
}

TEST(Config, UnknownKeysAreReportedWithPaths) {
  EXPECT_EQ(fields_of("factor:\n  pue: 1\n"), std::vector<std::string>{"factor"});
  EXPECT_EQ(fields_of("factors:\n  peu: 1\n"), std::vector<std::string>{"factors.peu"});
  EXPECT_EQ(fields_of("scenarios:\n  - name: HD\n    vod:\n      rv: 3\n"),
            std::vector<std::string>{"scenarios[0].vod.rv"});
}

TEST(Config, TypeErrorsAreReportedWithPaths) {
  const auto f = fields_of("factors:\n  pue: high\n  eta: 2\nterritory:\n  homes: -3\n"
                           "flags:\n  literal_2l: 1\n");
  EXPECT_EQ(f, (std::vector<std::string>{"territory.homes", "factors.pue", "flags.literal_2l"}));
}

TEST(Config, ValidationRunsOnTheMergedResult) {
  EXPECT_EQ(fields_of("scenarios:\n  - name: HD\n    vod:\n      s_v: 2\n"),
            std::vector<std::string>{"scenarios[1].vod.s_v"});
  EXPECT_EQ(fields_of("baseline: nope\n"), std::vector<std::string>{"baseline"});
  EXPECT_EQ(fields_of("factors:\n  epsilon: 2\n"), std::vector<std::string>{"factors.epsilon"});
  EXPECT_EQ(fields_of("scenarios:\n  - vod: {}\n"), std::vector<std::string>{"scenarios[0].name"});
}

TEST(Config, ScenariosMergeByName) {
  const RunConfig c = load_config_text("scenarios:\n"
                                       "  - name: HD\n    vod:\n      s_v: 0.1\n"
                                       "  - name: mine\n    vod:\n      r_v_mbps: 7\n");
  const RunConfig defaults;
  ASSERT_EQ(c.scenarios.size(), defaults.scenarios.size() + 1);
  EXPECT_EQ(c.scenario("HD").vod->s_v, 0.1);
  EXPECT_EQ(c.scenario("HD").vod->r_v_mbps, 3.0);
  EXPECT_EQ(c.scenarios.back().name, "mine");
  EXPECT_EQ(c.scenario("mine").vod->r_v_mbps, 7);
  EXPECT_EQ(c.scenario("mine").vod->s_v, VodUsage{}.s_v);
}

TEST(Config, NullRemovesAnOptionalBlock) {
  const RunConfig c = load_config_text("scenarios:\n  - name: UHD+DTT\n    cache: null\n"
                                       "  - name: baseline\n    dl: {}\n");
  EXPECT_FALSE(c.scenario("UHD+DTT").cache.has_value());
  ASSERT_TRUE(c.scenario("baseline").dl.has_value());
  EXPECT_EQ(*c.scenario("baseline").dl, DownloadUsage{});
}

TEST(Config, QuotedNumbersStayStrings) {
  const RunConfig c = load_config_text("scenarios:\n  - name: \"2024\"\nbaseline: \"2024\"\n");
  EXPECT_EQ(c.baseline, "2024");
  EXPECT_NE(c.find("2024"), nullptr);
  EXPECT_EQ(fields_of("factors:\n  pue: \"1.8\"\n"), std::vector<std::string>{"factors.pue"});
}

TEST(Config, HouseholdDistribution) {
  const RunConfig c = load_config_text(
      "territory:\n  inhabitants: 45675000\n"
      "  household_distribution:\n    \"1\": 0.5\n    \"2\": 0.5\n");
  EXPECT_DOUBLE_EQ(c.model.territory.household_dist.mean(), 1.5);
  EXPECT_EQ(fields_of("territory:\n  household_distribution:\n    \"1\": 0.5\n"),
            std::vector<std::string>{"territory.household_distribution"});
  EXPECT_EQ(fields_of("territory:\n  household_distribution:\n    one: 1\n"),
            std::vector<std::string>{"territory.household_distribution.one"});
}

TEST(Config, OutputSection) {
  const RunConfig c = load_config_text("output:\n  format: json\n  verbose: true\n");
  EXPECT_EQ(c.output.format, OutputFormat::json);
  EXPECT_TRUE(c.output.verbose);
  EXPECT_EQ(fields_of("output:\n  format: xml\n"), std::vector<std::string>{"output.format"});
}

TEST(Config, UnknownScenarioListsTheNames) {
  const RunConfig c;
  try {
    c.scenario("4K");
    FAIL();
  } catch (const ConfigError &e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("4K"), std::string::npos);
    for (const auto &name : c.scenario_names())
      EXPECT_NE(what.find(name), std::string::npos) << name;
  }
}

TEST(Config, MissingFile) {
  EXPECT_THROW(load_config_file("/nonexistent/netdim.yaml"), ConfigError);
}

TEST(Config, SampleFilesLoad) {
  const std::string dir = NETDIM_CONFIGS_DIR;
  EXPECT_EQ(load_config_file(dir + "/default.yaml"), RunConfig{});
  const RunConfig sober = load_config_file(dir + "/sober-uhd.yaml");
  EXPECT_TRUE(sober.model.dynamic.enabled);
  EXPECT_EQ(sober.scenario("UHD-shared").vod->sharing, 2.0);
  EXPECT_EQ(sober.scenario("UHD").vod->cdn_fraction, 0.9);
  const RunConfig literal = load_config_file(dir + "/literal-tree.yaml");
  EXPECT_TRUE(literal.model.topology.literal_2l);
  EXPECT_FALSE(literal.model.flags.apply_growth_margin_longhaul);
}

TEST(Config, ApplyScenarioAndModel) {
  Scenario s;
  apply_scenario(Json{{"vod", {{"r_v_mbps", 5}}}}, s);
  EXPECT_EQ(s.vod->r_v_mbps, 5);
  EXPECT_THROW(apply_scenario(Json{{"vod", {{"mode", "sometimes"}}}}, s), ConfigError);
  ModelInputs m;
  std::vector<FieldIssue> issues;
  apply_model(Json{{"cdn", {{"storage_servers", 2.5}}}}, m, issues, "config");
  ASSERT_EQ(issues.size(), 1u);
  EXPECT_EQ(issues[0].field, "config.cdn.storage_servers");
}
