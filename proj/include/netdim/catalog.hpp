#ifndef NETDIM_CATALOG_HPP
#define NETDIM_CATALOG_HPP

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "netdim/errors.hpp"
#include "netdim/peakstats.hpp"

namespace netdim {

/// Static power of one equipment unit and, for forwarding gear, its capacity.
struct PowerProfile {
  double static_power_w = 0.0;
  std::optional<double> capacity_gbps;

  friend bool operator==(const PowerProfile &, const PowerProfile &) = default;
};

/// Per-channel figures of the terrestrial WDM transport system.
struct WdmSystem {
  double terminal_w_per_channel = 4.6; // one multiplexer at each extremity
  double amplifier_w_per_channel = 3.5;
  double amplifier_spacing_km = 100.0;
  double channel_gbps = 40.0;

  friend bool operator==(const WdmSystem &, const WdmSystem &) = default;
};

/// Reference equipment data, 2020 technology.
struct EquipmentCatalog {
  PowerProfile onu{2.5, std::nullopt};
  PowerProfile gpon_port{15.0, 2.5};
  PowerProfile ge_port{30.0, 10.0};
  PowerProfile ethernet_switch_module{60.0, 40.0};
  PowerProfile bng_module{75.0, 40.0};
  PowerProfile edge_router_module{120.0, 40.0};
  PowerProfile core_router_module{1400.0, 560.0};
  PowerProfile flash_server{320.0, 190.0};
  PowerProfile storage_server{400.0, std::nullopt};
  WdmSystem wdm{};

  friend bool operator==(const EquipmentCatalog &, const EquipmentCatalog &) = default;
};

/// Multipliers applied on top of raw equipment counts.
struct GlobalFactors {
  double pue = 1.8;
  double eta = 2.0;     // redundancy
  double alpha_t = 1.5; // terrestrial growth margin
  double alpha_u = 2.0; // submarine growth margin
  ConfidenceLevel epsilon{1e-9};

  friend bool operator==(const GlobalFactors &, const GlobalFactors &) = default;
};

inline std::vector<FieldIssue> validate(const EquipmentCatalog &c, const std::string &prefix) {
  std::vector<FieldIssue> issues;
  struct Kind {
    const char *name;
    const PowerProfile *profile;
    bool forwards; // needs a capacity
  };
  const Kind kinds[] = {
      {"onu", &c.onu, false},
      {"gpon_port", &c.gpon_port, true},
      {"ge_port", &c.ge_port, true},
      {"ethernet_switch_module", &c.ethernet_switch_module, true},
      {"bng_module", &c.bng_module, true},
      {"edge_router_module", &c.edge_router_module, true},
      {"core_router_module", &c.core_router_module, true},
      {"flash_server", &c.flash_server, true},
      {"storage_server", &c.storage_server, false},
  };
  for (const auto &kind : kinds) {
    const std::string field = prefix + kind.name;
    if (!(kind.profile->static_power_w > 0.0))
      issues.push_back({field + ".power_w", "must be > 0"});
    if (kind.profile->capacity_gbps && !(*kind.profile->capacity_gbps > 0.0))
      issues.push_back({field + ".capacity_gbps", "must be > 0"});
    if (kind.forwards && !kind.profile->capacity_gbps)
      issues.push_back({field + ".capacity_gbps", "is required"});
  }
  if (!(c.wdm.terminal_w_per_channel >= 0.0))
    issues.push_back({prefix + "wdm.terminal_w_per_channel", "must be >= 0"});
  if (!(c.wdm.amplifier_w_per_channel >= 0.0))
    issues.push_back({prefix + "wdm.amplifier_w_per_channel", "must be >= 0"});
  if (!(c.wdm.amplifier_spacing_km > 0.0))
    issues.push_back({prefix + "wdm.amplifier_spacing_km", "must be > 0"});
  if (!(c.wdm.channel_gbps > 0.0))
    issues.push_back({prefix + "wdm.channel_gbps", "must be > 0"});
  return issues;
}

inline std::vector<FieldIssue> validate(const GlobalFactors &f, const std::string &prefix) {
  std::vector<FieldIssue> issues;
  const std::pair<const char *, double> at_least_one[] = {
      {"pue", f.pue}, {"eta", f.eta}, {"alpha_t", f.alpha_t}, {"alpha_u", f.alpha_u}};
  for (const auto &[name, value] : at_least_one)
    if (!(value >= 1.0))
      issues.push_back({prefix + name, "must be >= 1, got " + std::to_string(value)});
  return issues;
}

/// Capacity of a profile that must forward traffic.
inline double capacity_of(const PowerProfile &profile) {
  if (!profile.capacity_gbps)
    throw DomainError("equipment profile has no capacity");
  return *profile.capacity_gbps;
}

/// Energy intensity (W/Gbps) of gear measured `years` before the reference
/// year, improved by a constant yearly efficiency gain `gamma`.
inline double efficiency_scaled_intensity(double p0_w, double c0_gbps, int years,
                                          double gamma) {
  if (!(c0_gbps > 0.0))
    throw DomainError("reference capacity must be positive");
  if (!(gamma >= 0.0 && gamma < 1.0))
    throw DomainError("efficiency gain must lie in [0, 1)");
  return p0_w / c0_gbps * std::pow(1.0 - gamma, years);
}

} // namespace netdim

#endif // NETDIM_CATALOG_HPP
