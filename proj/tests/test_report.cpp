#include <cstdlib>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "netdim/config.hpp"
#include "netdim/report.hpp"

using namespace netdim;

namespace {

std::vector<EnergyReport> reference_suite(const ModelInputs &in = {}) {
  std::vector<EnergyReport> out;
  for (const auto &s : default_scenarios())
    if (!s.cache)
      out.push_back(evaluate(in, s));
  return out;
}

// Compares against tests/golden/<name>; NETDIM_UPDATE_GOLDEN=1 rewrites it.
void expect_golden(const std::string &name, const std::string &actual) {
  const std::string path = std::string(NETDIM_GOLDEN_DIR) + "/" + name;
  if (std::getenv("NETDIM_UPDATE_GOLDEN")) {
    std::ofstream(path, std::ios::binary) << actual;
    return;
  }
  std::ifstream in(path, std::ios::binary);
  ASSERT_TRUE(in) << "missing golden file " << path << " (run with NETDIM_UPDATE_GOLDEN=1)";
  std::stringstream expected;
  expected << in.rdbuf();
  EXPECT_EQ(actual, expected.str()) << name;
}

} // namespace

TEST(Format, Energy) {
  EXPECT_EQ(format_energy(0), "0");
  EXPECT_EQ(format_energy(666.9285), "667");
  EXPECT_EQ(format_energy(70.456), "70.5");
  EXPECT_EQ(format_energy(2.654), "2.65");
  EXPECT_EQ(format_energy(0.7312), "0.731");
  EXPECT_EQ(format_energy(0.01234), "0.0123");
  EXPECT_EQ(format_energy(1238.47), "1238");
  EXPECT_EQ(format_energy(9.996), "10.0");
  EXPECT_EQ(format_energy(99.96), "100");
  EXPECT_EQ(format_energy(-31.84), "-31.8");
}

TEST(Format, Percent) {
  EXPECT_EQ(format_percent(0), "+0%");
  EXPECT_EQ(format_percent(-0.2), "+0%");
  EXPECT_EQ(format_percent(17.4), "+17%");
  EXPECT_EQ(format_percent(-3.6), "-4%");
  EXPECT_EQ(format_fixed(2.5, 2), "2.50");
}

TEST(Table, LayoutAndBaselineRow) {
  const auto reports = reference_suite();
  const std::string table = render_table(reports, "baseline");
  std::istringstream lines(table);
  std::string header, rule, first;
  std::getline(lines, header);
  std::getline(lines, rule);
  std::getline(lines, first);
  for (const char *title : {"Scenario (GWh/yr)", "ONU", "Access", "National Core+Edge",
                            "Int. longhaul", "CDN", "Total", "Delta"})
    EXPECT_NE(header.find(title), std::string::npos) << title;
  EXPECT_EQ(header.find("Devices"), std::string::npos);
  EXPECT_EQ(rule.find_first_not_of("-+"), std::string::npos);
  EXPECT_EQ(header.size(), rule.size());
  EXPECT_EQ(first.rfind("baseline", 0), 0u);
  EXPECT_NE(first.find("+0%"), std::string::npos);
  EXPECT_NE(table.find("Wh/GB"), std::string::npos);
  EXPECT_NE(table.find("Volume (EB/yr)"), std::string::npos);
}

TEST(Table, DevicesColumnOnlyWhenPresent) {
  const ModelInputs in;
  std::vector<EnergyReport> reports{evaluate(in, RunConfig{}.scenario("baseline")),
                                    evaluate(in, RunConfig{}.scenario("UHD+DTT"))};
  EXPECT_NE(render_table(reports, "baseline").find("Devices"), std::string::npos);
}

TEST(Table, SingleRow) {
  const std::vector<EnergyReport> one{evaluate({}, RunConfig{}.scenario("baseline"))};
  const std::string table = render_table(one, "baseline");
  EXPECT_NE(table.find("+0%"), std::string::npos);
}

TEST(Table, MissingBaselineIsARenderError) {
  const std::vector<EnergyReport> one{evaluate({}, RunConfig{}.scenario("HD"))};
  EXPECT_THROW(render_table(one, "baseline"), RenderError);
  EXPECT_THROW(report_document(one, "baseline"), RenderError);
}

TEST(Json, DocumentShape) {
  const Json doc = report_document(reference_suite(), "baseline");
  EXPECT_EQ(doc["schema"], kReportSchema);
  ASSERT_EQ(doc["reports"].size(), 6u);
  const Json &hd = doc["reports"][1];
  EXPECT_EQ(hd["scenario"], "HD");
  for (const char *segment : EnergyReport::kSegmentNames)
    EXPECT_TRUE(hd["segments"].contains(segment)) << segment;
  EXPECT_EQ(hd["delta"]["baseline"], "baseline");
  double sum = 0;
  for (const auto &[name, seg] : hd["segments"].items())
    sum += seg["energy_gwh"].get<double>();
  EXPECT_NEAR(hd["total_gwh"].get<double>(), sum, 1e-9 * sum);
  EXPECT_NEAR(hd["delta"]["delta_gwh"].get<double>(),
              hd["total_gwh"].get<double>() - doc["reports"][0]["total_gwh"].get<double>(), 1e-9);
}

TEST(Json, RoundTripIsByteIdentical) {
  const std::string text = render_json(reference_suite(), "baseline");
  std::string baseline;
  const auto parsed = parse_report_document(Json::parse(text), &baseline);
  EXPECT_EQ(baseline, "baseline");
  EXPECT_EQ(render_json(parsed, baseline), text);
  const auto original = reference_suite();
  ASSERT_EQ(parsed.size(), original.size());
  for (std::size_t i = 0; i < parsed.size(); ++i) {
    EXPECT_EQ(parsed[i].definition, original[i].definition);
    EXPECT_EQ(parsed[i].inputs, original[i].inputs);
    EXPECT_EQ(parsed[i].total_gwh, original[i].total_gwh);
  }
}

TEST(Json, MalformedDocuments) {
  EXPECT_THROW(parse_report_document(Json{{"schema", "other"}}), ConfigError);
  Json doc = report_document(reference_suite(), "baseline");
  doc["reports"][2]["segments"]["onu"]["energy_gwh"] = "a lot";
  try {
    parse_report_document(doc);
    FAIL();
  } catch (const ConfigError &e) {
    EXPECT_EQ(e.issues().front().field, "reports[2].segments.onu.energy_gwh");
  }
}

TEST(Json, CompareDocument) {
  const RunConfig c;
  const auto a = evaluate(c.model, c.scenario("baseline"));
  const auto b = evaluate(c.model, c.scenario("UHD"));
  const Json doc = compare_document(a, b);
  EXPECT_EQ(doc["schema"], kCompareSchema);
  EXPECT_TRUE(doc["deltas"]["cdn"]["delta_pct"].is_null());
  EXPECT_NEAR(doc["deltas"]["total"]["delta_gwh"].get<double>(), b.total_gwh - a.total_gwh, 1e-9);
  const std::string table = render_compare_table(a, b);
  EXPECT_NE(table.find("n/a"), std::string::npos);
  EXPECT_NE(table.find("UHD"), std::string::npos);
}

TEST(Json, SweepDocument) {
  const RunConfig c;
  const auto base = evaluate(c.model, c.scenario("baseline"));
  const std::vector<double> values{3, 5};
  const auto points = sweep(c.model, c.scenario("HD"), "r_v_mbps", values, base);
  const Json doc = sweep_document("HD", "r_v_mbps", values, points, "baseline");
  EXPECT_EQ(doc["schema"], kSweepSchema);
  ASSERT_EQ(doc["points"].size(), 2u);
  EXPECT_EQ(doc["points"][1]["value"], 5.0);
  EXPECT_EQ(doc["points"][1]["total_gwh"], evaluate(c.model, c.scenario("FHD")).total_gwh);
  EXPECT_NE(render_sweep_table("r_v_mbps", values, points).find("r_v_mbps"), std::string::npos);
}

TEST(Golden, ReferenceTable) {
  expect_golden("reference_table.txt", render_table(reference_suite(), "baseline"));
}

TEST(Golden, ReferenceJson) {
  expect_golden("reference_report.json", render_json(reference_suite(), "baseline"));
}

TEST(Golden, CachingVariantsTable) {
  const RunConfig c;
  std::vector<EnergyReport> reports;
  for (const char *name : {"baseline", "FHD", "FHD+DTT", "FHD+OLT", "UHD", "UHD+DTT", "UHD+OLT"})
    reports.push_back(evaluate(c.model, c.scenario(name)));
  expect_golden("caching_table.txt", render_table(reports, "baseline"));
}
