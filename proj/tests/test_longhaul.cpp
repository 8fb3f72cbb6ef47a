#include <cmath>

#include <gtest/gtest.h>

#include "netdim/cdn.hpp"
#include "netdim/longhaul.hpp"
#include "netdim/scenario.hpp"

using namespace netdim;

namespace {
const EquipmentCatalog kCatalog;
const GlobalFactors kFactors;
const LonghaulRoute kRoute;
} // namespace

TEST(Submarine, ChannelPower) {
  EXPECT_DOUBLE_EQ(submarine_channel_power(kRoute), 142.0);
  LonghaulRoute stub = kRoute;
  stub.submarine_length_km = 0;
  EXPECT_DOUBLE_EQ(submarine_channel_power(stub), 70.0);
  LonghaulRoute lossless = kRoute;
  lossless.feed_efficiency = 1.0;
  EXPECT_DOUBLE_EQ(submarine_channel_power(lossless), 134.0);
}

TEST(LonghaulPeak, Examples) {
  const double r_b_star = 0.02 * 30.45e6 * 10 / 1000; // 6090 Gbps
  EXPECT_NEAR(longhaul_peak(0, 0, r_b_star, 0, kRoute, kFactors, false), 2030, 1e-9);
  EXPECT_NEAR(longhaul_peak(0, 0, r_b_star, 0, kRoute, kFactors, true), 3045, 1e-9);
  EXPECT_NEAR(longhaul_peak(0, 5000, r_b_star, 1.0, kRoute, kFactors, false), r_b_star / 3, 1e-9);
  EXPECT_NEAR(longhaul_peak(64, 100, 0, 0.5, kRoute, kFactors, false), 64, 1e-12);
}

TEST(LonghaulDimensioning, SubmarinePartAtBaselinePeak) {
  const auto d = dimension_longhaul(2030, kRoute, kCatalog, kFactors);
  EXPECT_EQ(d.submarine_channels, 51u);
  EXPECT_NEAR(d.submarine_w, 1.8 * 2 * 2 * 51 * 142, 1e-6);
  const double terrestrial = 7 * core_node_power(2030, kCatalog, kFactors) +
                             wdm_link_power(2030, 600, kCatalog.wdm, kFactors) +
                             wdm_link_power(2030, 900, kCatalog.wdm, kFactors);
  EXPECT_NEAR(d.terrestrial_w, terrestrial, 1e-6);
  EXPECT_NEAR(d.power_w, d.terrestrial_w + d.submarine_w, 1e-9);
}

TEST(LonghaulDimensioning, SubmarineTermIsLinearInChannels) {
  const auto one = dimension_longhaul(400, kRoute, kCatalog, kFactors);
  const auto two = dimension_longhaul(800, kRoute, kCatalog, kFactors);
  EXPECT_EQ(two.submarine_channels, 2 * one.submarine_channels);
  EXPECT_DOUBLE_EQ(two.submarine_w, 2 * one.submarine_w);
}

TEST(LonghaulDimensioning, StepFunctionOfPeak) {
  double previous = 0;
  for (double r = 0; r <= 2000; r += 0.5) {
    const double p = dimension_longhaul(r, kRoute, kCatalog, kFactors).power_w;
    EXPECT_GE(p, previous);
    if (p != previous && r > 0) {
      // every capacity in play is a multiple of 40 Gbps
      EXPECT_GT(std::ceil(r / 40 - 1e-12), std::ceil((r - 0.5) / 40 - 1e-12)) << r;
    }
    previous = p;
  }
}

TEST(Longhaul, FillRateFarBelowTheBaselineInternationalPeak) {
  const double fill = cdn_fill_rate(CdnConfig{});
  const double international = 0.02 * 30.45e6 * 10 / 1000 / 3;
  EXPECT_LE(10 * fill, international);
}

TEST(Longhaul, ScenarioEnergies) {
  const ModelInputs in;
  Scenario baseline;
  baseline.name = "baseline";
  const auto base = evaluate(in, baseline);
  EXPECT_GE(base.longhaul.energy_gwh, 2.0);
  EXPECT_LE(base.longhaul.energy_gwh, 3.6);

  for (double r_v : {3.0, 5.0, 16.0, 27.0}) {
    Scenario s;
    s.name = "video";
    s.vod = VodUsage{};
    s.vod->r_v_mbps = r_v;
    const auto report = evaluate(in, s);
    if (r_v == 3.0) {
      EXPECT_GE(report.longhaul.energy_gwh, 7);
      EXPECT_LE(report.longhaul.energy_gwh, 13);
    }
    EXPECT_NEAR(report.details.at("longhaul.submarine_share"), 0.33, 0.08) << r_v;
  }
}

TEST(Longhaul, RouteValidation) {
  LonghaulRoute r;
  r.feed_efficiency = 0;
  r.terrestrial_segments_km = {600, -1};
  const auto issues = validate(r, "route.");
  ASSERT_EQ(issues.size(), 2u);
  EXPECT_EQ(issues[0].field, "route.terrestrial_segments_km[1]");
  EXPECT_EQ(issues[1].field, "route.feed_efficiency");
}
