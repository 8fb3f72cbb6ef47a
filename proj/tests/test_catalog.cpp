#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "netdim/catalog.hpp"
#include "netdim/config.hpp"

using namespace netdim;

TEST(Catalog, ReferenceValues) {
  const EquipmentCatalog c;
  EXPECT_EQ(c.onu.static_power_w, 2.5);
  EXPECT_FALSE(c.onu.capacity_gbps);
  EXPECT_EQ(c.gpon_port.static_power_w, 15.0);
  EXPECT_EQ(*c.gpon_port.capacity_gbps, 2.5);
  EXPECT_EQ(c.ge_port.static_power_w, 30.0);
  EXPECT_EQ(*c.ge_port.capacity_gbps, 10.0);
  EXPECT_EQ(c.ethernet_switch_module.static_power_w, 60.0);
  EXPECT_EQ(c.bng_module.static_power_w, 75.0);
  EXPECT_EQ(c.edge_router_module.static_power_w, 120.0);
  EXPECT_EQ(*c.edge_router_module.capacity_gbps, 40.0);
  EXPECT_EQ(c.core_router_module.static_power_w, 1400.0);
  EXPECT_EQ(*c.core_router_module.capacity_gbps, 560.0);
  EXPECT_EQ(c.flash_server.static_power_w, 320.0);
  EXPECT_EQ(*c.flash_server.capacity_gbps, 190.0);
  EXPECT_EQ(c.storage_server.static_power_w, 400.0);
  EXPECT_FALSE(c.storage_server.capacity_gbps);
  EXPECT_TRUE(validate(c, "catalog.").empty());
}

TEST(Catalog, ValidationNamesTheField) {
  EquipmentCatalog c;
  c.bng_module.static_power_w = 0;
  c.flash_server.capacity_gbps.reset();
  c.ge_port.capacity_gbps = -1;
  const auto issues = validate(c, "catalog.");
  ASSERT_EQ(issues.size(), 3u);
  EXPECT_EQ(issues[0].field, "catalog.ge_port.capacity_gbps");
  EXPECT_EQ(issues[1].field, "catalog.bng_module.power_w");
  EXPECT_EQ(issues[2].field, "catalog.flash_server.capacity_gbps");
}

TEST(GlobalFactors, DefaultsAndBounds) {
  const GlobalFactors f;
  EXPECT_EQ(f.pue, 1.8);
  EXPECT_EQ(f.eta, 2.0);
  EXPECT_EQ(f.alpha_t, 1.5);
  EXPECT_EQ(f.alpha_u, 2.0);
  EXPECT_EQ(f.epsilon.value(), 1e-9);
  EXPECT_TRUE(validate(f, "").empty());
  GlobalFactors bad;
  bad.pue = 0.9;
  bad.alpha_u = 0.5;
  const auto issues = validate(bad, "factors.");
  ASSERT_EQ(issues.size(), 2u);
  EXPECT_EQ(issues[0].field, "factors.pue");
  EXPECT_EQ(issues[1].field, "factors.alpha_u");
}

TEST(EfficiencyScaling, Examples) {
  EXPECT_DOUBLE_EQ(efficiency_scaled_intensity(100, 10, 0, 0.1), 10.0);
  EXPECT_DOUBLE_EQ(efficiency_scaled_intensity(100, 10, 1, 0.1), 9.0);
  EXPECT_NEAR(efficiency_scaled_intensity(100, 10, 12, 0.1), 10 * std::pow(0.9, 12), 1e-12);
  EXPECT_NEAR(efficiency_scaled_intensity(100, 10, 12, 0.1), 2.824, 1e-3);
  EXPECT_THROW(efficiency_scaled_intensity(100, 0, 1, 0.1), DomainError);
  EXPECT_THROW(efficiency_scaled_intensity(100, 10, 1, 1.0), DomainError);
}

TEST(EfficiencyScaling, StrictlyDecreasingInYears) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> gamma(0.01, 0.5), power(1, 2000), cap(0.1, 600);
  for (int trial = 0; trial < 50; ++trial) {
    const double g = gamma(rng), p = power(rng), c = cap(rng);
    for (int t = 0; t < 20; ++t)
      EXPECT_LT(efficiency_scaled_intensity(p, c, t + 1, g), efficiency_scaled_intensity(p, c, t, g));
  }
}

TEST(Catalog, RoundTripsThroughTheConfigFormatBitIdentically) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> value(1e-3, 1e4);
  std::uniform_int_distribution<int> exponent(-300, 300);
  for (int trial = 0; trial < 25; ++trial) {
    RunConfig config;
    auto &c = config.model.catalog;
    for (PowerProfile *p : {&c.onu, &c.gpon_port, &c.ge_port, &c.ethernet_switch_module,
                            &c.bng_module, &c.edge_router_module, &c.core_router_module,
                            &c.flash_server, &c.storage_server}) {
      p->static_power_w = value(rng);
      if (p->capacity_gbps)
        p->capacity_gbps = trial % 5 == 0 ? std::ldexp(1.0, exponent(rng)) : value(rng);
    }
    c.wdm.terminal_w_per_channel = value(rng);
    c.wdm.amplifier_w_per_channel = 1.0 / 3.0;
    c.wdm.amplifier_spacing_km = 0.1 + 0.2;
    const std::string yaml = to_yaml(to_json(config));
    const RunConfig back = load_config_text(yaml);
    EXPECT_EQ(back.model.catalog, c) << yaml;
  }
}
