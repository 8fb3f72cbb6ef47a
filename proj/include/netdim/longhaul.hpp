#ifndef NETDIM_LONGHAUL_HPP
#define NETDIM_LONGHAUL_HPP

// International route from the main IXP to the overseas datacenter: two
// terrestrial WDM sections crossing transit core nodes, then a submarine
// WDM cable with powered repeaters.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "netdim/catalog.hpp"
#include "netdim/corenet.hpp"
#include "netdim/errors.hpp"

namespace netdim {

struct LonghaulRoute {
  std::vector<double> terrestrial_segments_km{600.0, 900.0};
  std::uint64_t transit_core_nodes = 7;
  double submarine_length_km = 8000.0;
  double repeater_spacing_km = 50.0;
  double terminal_w_per_channel = 35.0;
  double repeater_w_per_channel = 0.2;
  double feed_efficiency = 0.8;
  double cable_loss_w_per_km = 0.004; // per channel
  double channel_gbps = 40.0;
  double international_baseline_share = 1.0 / 3.0;

  friend bool operator==(const LonghaulRoute &, const LonghaulRoute &) = default;
};

inline std::vector<FieldIssue> validate(const LonghaulRoute &r, const std::string &prefix) {
  std::vector<FieldIssue> issues;
  for (std::size_t i = 0; i < r.terrestrial_segments_km.size(); ++i)
    if (!(r.terrestrial_segments_km[i] > 0.0))
      issues.push_back(
          {prefix + "terrestrial_segments_km[" + std::to_string(i) + "]", "must be > 0"});
  if (!(r.submarine_length_km >= 0.0))
    issues.push_back({prefix + "submarine_length_km", "must be >= 0"});
  if (!(r.repeater_spacing_km > 0.0))
    issues.push_back({prefix + "repeater_spacing_km", "must be > 0"});
  if (!(r.feed_efficiency > 0.0 && r.feed_efficiency <= 1.0))
    issues.push_back({prefix + "feed_efficiency", "must lie in (0, 1]"});
  if (!(r.channel_gbps > 0.0))
    issues.push_back({prefix + "channel_gbps", "must be > 0"});
  if (!(r.international_baseline_share >= 0.0 && r.international_baseline_share <= 1.0))
    issues.push_back({prefix + "international_baseline_share", "must lie in [0, 1]"});
  return issues;
}

/// Per-channel power of the submarine system: two terminals, repeaters fed
/// from shore through a lossy supply, and resistive loss along the cable.
inline double submarine_channel_power(const LonghaulRoute &route) {
  const double repeaters = route.submarine_length_km / route.repeater_spacing_km;
  return 2.0 * route.terminal_w_per_channel +
         repeaters * route.repeater_w_per_channel / route.feed_efficiency +
         route.cable_loss_w_per_km * route.submarine_length_km;
}

/// R_u* = max(R_fill, (1 - %CDN) R_v*) + share * R_b*, optionally margined.
inline double longhaul_peak(double fill_gbps, double r_v_star_gbps, double r_b_star_gbps,
                            double cdn_fraction, const LonghaulRoute &route,
                            const GlobalFactors &factors, bool apply_growth_margin) {
  const double peak =
      std::max(fill_gbps, (1.0 - cdn_fraction) * r_v_star_gbps) +
      route.international_baseline_share * r_b_star_gbps;
  return apply_growth_margin ? factors.alpha_t * peak : peak;
}

struct LonghaulDimensions {
  double peak_gbps = 0;
  std::uint64_t core_modules_per_node = 0;
  std::uint64_t terrestrial_channels = 0;
  std::uint64_t submarine_channels = 0;
  double terrestrial_w = 0;
  double submarine_w = 0;
  double power_w = 0;

  double submarine_share() const { return power_w > 0 ? submarine_w / power_w : 0.0; }
};

inline LonghaulDimensions dimension_longhaul(double r_u_gbps, const LonghaulRoute &route,
                                             const EquipmentCatalog &catalog,
                                             const GlobalFactors &factors) {
  LonghaulDimensions dims;
  dims.peak_gbps = r_u_gbps;
  dims.core_modules_per_node = core_node_modules(r_u_gbps, catalog);
  dims.terrestrial_channels = wdm_channels(r_u_gbps, catalog.wdm);
  dims.terrestrial_w =
      double(route.transit_core_nodes) * core_node_power(r_u_gbps, catalog, factors);
  for (double segment : route.terrestrial_segments_km)
    dims.terrestrial_w += wdm_link_power(r_u_gbps, segment, catalog.wdm, factors);

  dims.submarine_channels =
      static_cast<std::uint64_t>(std::max(1.0, std::ceil(r_u_gbps / route.channel_gbps)));
  dims.submarine_w = factors.pue * factors.eta * factors.alpha_u *
                     double(dims.submarine_channels) * submarine_channel_power(route);
  dims.power_w = dims.terrestrial_w + dims.submarine_w;
  return dims;
}

} // namespace netdim

#endif // NETDIM_LONGHAUL_HPP
