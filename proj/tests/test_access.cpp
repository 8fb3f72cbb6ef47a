#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "netdim/access.hpp"
#include "netdim/demand.hpp"
#include "netdim/scenario.hpp"

using namespace netdim;

namespace {

const Territory kTerritory;
const EquipmentCatalog kCatalog;
const GlobalFactors kFactors;

Scenario video(double r_v, double s_v = 0.2) {
  Scenario s;
  s.name = "video";
  if (r_v > 0) {
    s.vod = VodUsage{};
    s.vod->r_v_mbps = r_v;
    s.vod->s_v = s_v;
  }
  return s;
}

DemandCurve curve(const Scenario &s) {
  return demand_curve(s, kTerritory.household_dist, kFactors.epsilon);
}

void expect_certificate(const DemandCurve &R, std::uint64_t n) {
  EXPECT_LT(kFactors.alpha_t * R.gbps(double(n)), 2.5);
  if (n < 128) {
    EXPECT_GE(kFactors.alpha_t * R.gbps(double(n + 1)), 2.5);
  }
}

} // namespace

TEST(GponSearch, BaselineUsesTheFullSplit) {
  const auto R = curve(video(0));
  const auto n = max_subscribers_per_gpon(R, kFactors, 2.5);
  EXPECT_EQ(n, 128u);
  expect_certificate(R, n);
  EXPECT_NEAR(kFactors.alpha_t * R(128), 255, 20);
}

TEST(GponSearch, HighBitrateVideoShrinksTheSplit) {
  const auto R = curve(video(27));
  const auto n = max_subscribers_per_gpon(R, kFactors, 2.5);
  EXPECT_GE(n, 71u);
  EXPECT_LE(n, 79u);
  expect_certificate(R, n);
}

TEST(GponSearch, SingleSubscriberSaturatingThePortIsInfeasible) {
  Scenario s = video(0);
  s.baseline.r_b_mbps = 2500;
  s.baseline.s_b = 1.0;
  try {
    max_subscribers_per_gpon(curve(s), kFactors, 2.5);
    FAIL() << "expected infeasibility";
  } catch (const InfeasibleError &e) {
    EXPECT_EQ(e.constraint(), "gpon_capacity");
  }
}

TEST(GponSearch, RejectsDecreasingDemand) {
  struct Decreasing {
    double gbps(double n) const { return 1.0 / n; }
  };
  EXPECT_THROW(max_subscribers_per_gpon(Decreasing{}, kFactors, 2.5), DomainError);
}

TEST(GponSearch, CertificateHoldsForRandomUsage) {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> r_v(0.5, 60), s_v(0.01, 0.6), r_b(1, 40);
  for (int trial = 0; trial < 40; ++trial) {
    Scenario s = video(r_v(rng), s_v(rng));
    s.baseline.r_b_mbps = r_b(rng);
    const auto R = curve(s);
    std::uint64_t n = 0;
    try {
      n = max_subscribers_per_gpon(R, kFactors, 2.5);
    } catch (const InfeasibleError &) {
      EXPECT_GE(kFactors.alpha_t * R.gbps(1), 2.5);
      continue;
    }
    // brute force: the largest fitting n in [1, 128]
    std::uint64_t brute = 0;
    for (std::uint64_t k = 1; k <= 128; ++k)
      if (kFactors.alpha_t * R.gbps(double(k)) < 2.5)
        brute = k;
    EXPECT_EQ(n, brute) << "trial " << trial;
    expect_certificate(R, n);
  }
}

TEST(AccessDimensioning, BaselineCounts) {
  const auto d = dimension_access(kTerritory, curve(video(0)), kCatalog, kFactors);
  EXPECT_EQ(d.subscribers_per_gpon, 128u);
  EXPECT_EQ(d.gpon_ports, 285'891u); // ceil(30.45e6 / 128) + 3000 * 16
  EXPECT_EQ(d.olts, 3000u);
  EXPECT_EQ(d.subscribers_per_olt, 10'150u);
  EXPECT_NEAR(d.olt_peak_gbps, 4.3, 0.3);
  EXPECT_EQ(d.ge_ports, 6000u);
  EXPECT_DOUBLE_EQ(d.power_w, 1.8 * (285'891.0 * 15 + 6000.0 * 30));
  const double gwh = d.power_w * 8760 / 1e9;
  EXPECT_GE(gwh, 65);
  EXPECT_LE(gwh, 73);
}

TEST(AccessDimensioning, StructuralInvariants) {
  for (double r_v : {0.0, 3.0, 5.0, 16.0, 27.0, 40.0}) {
    const auto d = dimension_access(kTerritory, curve(video(r_v)), kCatalog, kFactors);
    EXPECT_GE(d.subscribers_per_gpon, 1u);
    EXPECT_LE(d.subscribers_per_gpon, 128u);
    EXPECT_GE(d.gpon_ports * d.subscribers_per_gpon, kTerritory.homes);
    EXPECT_GE(d.olts, kTerritory.hubs);
    EXPECT_DOUBLE_EQ(d.power_w, kFactors.pue * (double(d.gpon_ports) * 15 + double(d.ge_ports) * 30));
  }
}

TEST(AccessDimensioning, RedundancyAndPaddingAreAdditive) {
  const auto R = curve(video(5));
  const auto full = dimension_access(kTerritory, R, kCatalog, kFactors);
  GlobalFactors single = kFactors;
  single.eta = 1;
  EXPECT_LT(dimension_access(kTerritory, R, kCatalog, single).power_w, full.power_w);
  Territory one_hub = kTerritory;
  one_hub.hubs = 1;
  EXPECT_LT(dimension_access(one_hub, R, kCatalog, kFactors).gpon_ports, full.gpon_ports);
}

TEST(AccessDimensioning, PowerIsANonDecreasingStepFunctionOfBitrate) {
  double previous = 0;
  int steps = 0;
  for (double r_v = 0; r_v <= 40; r_v += 0.25) {
    const double p = dimension_access(kTerritory, curve(video(r_v)), kCatalog, kFactors).power_w;
    EXPECT_GE(p, previous) << r_v;
    steps += p > previous && previous > 0;
    previous = p;
  }
  EXPECT_GT(steps, 3);
}
