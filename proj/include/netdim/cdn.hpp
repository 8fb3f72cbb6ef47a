#ifndef NETDIM_CDN_HPP
#define NETDIM_CDN_HPP

// Single-site CDN at the main IXP: flash servers for throughput, a fixed
// pool of storage servers for the catalog, and dedicated edge routers.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "netdim/catalog.hpp"
#include "netdim/errors.hpp"

namespace netdim {

struct CdnConfig {
  std::uint64_t storage_servers = 40;
  double storage_capacity_tb = 320.0;
  double daily_update_fraction = 0.018;
  double fill_window_h = 8.0;

  friend bool operator==(const CdnConfig &, const CdnConfig &) = default;
};

inline std::vector<FieldIssue> validate(const CdnConfig &c, const std::string &prefix) {
  std::vector<FieldIssue> issues;
  if (!(c.storage_capacity_tb >= 0.0))
    issues.push_back({prefix + "storage_capacity_tb", "must be >= 0"});
  if (!(c.daily_update_fraction >= 0.0 && c.daily_update_fraction <= 1.0))
    issues.push_back({prefix + "daily_update_fraction", "must lie in [0, 1]"});
  if (!(c.fill_window_h > 0.0))
    issues.push_back({prefix + "fill_window_h", "must be > 0"});
  return issues;
}

/// Rate needed to refresh the storage servers within the nightly window.
inline double cdn_fill_rate(const CdnConfig &config) {
  const double bits = double(config.storage_servers) * config.storage_capacity_tb * 1e12 *
                      8.0 * config.daily_update_fraction;
  return bits / (config.fill_window_h * 3600.0) / 1e9;
}

struct CdnDimensions {
  bool active = false;
  double peak_gbps = 0; // R*_CDN, margined
  std::uint64_t flash_servers = 0;
  std::uint64_t storage_servers = 0;
  std::uint64_t router_modules = 0;
  double power_w = 0;
};

/// Sizes the CDN for the share of the global VoD peak it serves. An inactive
/// service has no CDN at all.
inline CdnDimensions dimension_cdn(double r_v_global_gbps, double cdn_fraction,
                                   bool service_active, const CdnConfig &config,
                                   const EquipmentCatalog &catalog,
                                   const GlobalFactors &factors) {
  CdnDimensions dims;
  if (!service_active)
    return dims;
  dims.active = true;
  dims.peak_gbps = factors.alpha_t * cdn_fraction * r_v_global_gbps;
  dims.flash_servers =
      static_cast<std::uint64_t>(std::ceil(dims.peak_gbps / capacity_of(catalog.flash_server)));
  dims.storage_servers = config.storage_servers;
  dims.router_modules = static_cast<std::uint64_t>(
      std::ceil(dims.peak_gbps / capacity_of(catalog.edge_router_module)));
  dims.power_w =
      factors.pue *
      (double(dims.flash_servers) * catalog.flash_server.static_power_w +
       double(dims.storage_servers) * catalog.storage_server.static_power_w +
       factors.eta * double(dims.router_modules) * catalog.edge_router_module.static_power_w);
  return dims;
}

} // namespace netdim

#endif // NETDIM_CDN_HPP
