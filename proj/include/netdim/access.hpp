#ifndef NETDIM_ACCESS_HPP
#define NETDIM_ACCESS_HPP

// GPON fiber-to-the-home access: ONUs at home, GPON ports grouped on cards in
// OLTs at the operator hubs, and 10GE uplinks from each OLT to the edge.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "netdim/catalog.hpp"
#include "netdim/demand.hpp"
#include "netdim/errors.hpp"
#include "netdim/peakstats.hpp"

namespace netdim {

struct Territory {
  double inhabitants = 65e6;
  std::uint64_t homes = 30'450'000;
  std::uint64_t hubs = 3000;
  HouseholdDistribution household_dist = HouseholdDistribution::france_2019();

  friend bool operator==(const Territory &, const Territory &) = default;
};

inline std::vector<FieldIssue> validate(const Territory &t, const std::string &prefix) {
  std::vector<FieldIssue> issues;
  if (t.homes == 0)
    issues.push_back({prefix + "homes", "must be > 0"});
  if (t.hubs == 0)
    issues.push_back({prefix + "hubs", "must be >= 1"});
  if (t.homes > 0) {
    const double expected = double(t.homes) * t.household_dist.mean();
    if (!(std::abs(t.inhabitants - expected) <= 0.05 * expected))
      issues.push_back({prefix + "inhabitants",
                        "must be within 5% of homes x mean household size (" +
                            std::to_string(expected) + ")"});
  }
  return issues;
}

/// OLT chassis layout.
struct AccessLayout {
  std::uint64_t ports_per_card = 16;
  std::uint64_t cards_per_olt = 16;
  std::uint64_t max_split = 128; // subscribers per GPON tree

  friend bool operator==(const AccessLayout &, const AccessLayout &) = default;
};

struct AccessDimensions {
  std::uint64_t subscribers_per_gpon = 0;
  std::uint64_t gpon_ports = 0;
  std::uint64_t olts = 0;
  std::uint64_t subscribers_per_olt = 0;
  double olt_peak_gbps = 0.0; // with growth margin
  std::uint64_t ge_ports = 0;
  double power_w = 0.0;
};

/// Largest split n <= max_split whose margined peak stays strictly below the
/// GPON port capacity. Binary search; R(n) must be non-decreasing.
template <class Demand>
std::uint64_t max_subscribers_per_gpon(const Demand &demand, const GlobalFactors &factors,
                                       double c_gpon_gbps,
                                       std::uint64_t max_split = 128) {
  const auto fits = [&](std::uint64_t n) {
    return factors.alpha_t * demand.gbps(double(n)) < c_gpon_gbps;
  };
  if (demand.gbps(1.0) > demand.gbps(double(max_split)))
    throw DomainError("demand curve decreases between 1 and " +
                      std::to_string(max_split) + " subscribers");
  if (!fits(1))
    throw InfeasibleError("gpon_capacity",
                          "a single subscriber's margined peak (" +
                              std::to_string(factors.alpha_t * demand.gbps(1.0)) +
                              " Gbps) reaches the GPON port capacity (" +
                              std::to_string(c_gpon_gbps) + " Gbps)");
  std::uint64_t lo = 1, hi = max_split; // fits(lo) holds
  if (fits(hi))
    return hi;
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    (fits(mid) ? lo : hi) = mid;
  }
  return lo;
}

template <class Demand>
AccessDimensions dimension_access(const Territory &territory, const Demand &demand,
                                  const EquipmentCatalog &catalog,
                                  const GlobalFactors &factors,
                                  const AccessLayout &layout = {}) {
  AccessDimensions dims;
  dims.subscribers_per_gpon = max_subscribers_per_gpon(
      demand, factors, capacity_of(catalog.gpon_port), layout.max_split);

  // One spare card's worth of ports per hub: cards are never completely filled.
  dims.gpon_ports = static_cast<std::uint64_t>(
      std::ceil(double(territory.homes) / double(dims.subscribers_per_gpon) +
                double(territory.hubs * layout.ports_per_card)));
  const std::uint64_t ports_per_olt = layout.ports_per_card * layout.cards_per_olt;
  dims.olts = std::max(territory.hubs, (dims.gpon_ports + ports_per_olt - 1) / ports_per_olt);

  dims.subscribers_per_olt = (territory.homes + dims.olts - 1) / dims.olts;
  dims.olt_peak_gbps = factors.alpha_t * demand.gbps(double(dims.subscribers_per_olt));
  const double uplinks_per_olt =
      std::max(1.0, std::ceil(dims.olt_peak_gbps / capacity_of(catalog.ge_port)));
  dims.ge_ports =
      static_cast<std::uint64_t>(std::ceil(factors.eta * double(dims.olts) * uplinks_per_olt));

  dims.power_w = factors.pue * (double(dims.gpon_ports) * catalog.gpon_port.static_power_w +
                                double(dims.ge_ports) * catalog.ge_port.static_power_w);
  return dims;
}

} // namespace netdim

#endif // NETDIM_ACCESS_HPP
