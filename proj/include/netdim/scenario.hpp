#ifndef NETDIM_SCENARIO_HPP
#define NETDIM_SCENARIO_HPP

// Scenario evaluation: build the demand curve, dimension every network
// segment for it, and report annual energy, yearly volume and intensity.

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "netdim/access.hpp"
#include "netdim/catalog.hpp"
#include "netdim/cdn.hpp"
#include "netdim/corenet.hpp"
#include "netdim/demand.hpp"
#include "netdim/errors.hpp"
#include "netdim/longhaul.hpp"
#include "netdim/peakstats.hpp"

namespace netdim {

inline constexpr double kHoursPerYear = 8760.0;

/// DTT-filled caching box installed in every home.
struct HomeCacheDevice {
  double standby_w = 0.5;
  double active_w = 10.0;
  double active_hours = 3.5; // per day

  friend bool operator==(const HomeCacheDevice &, const HomeCacheDevice &) = default;
};

/// Caching card inserted in an OLT shelf.
struct OltCacheDevice {
  double device_w = 30.0;
  std::uint64_t subscribers_per_olt = 8000;

  friend bool operator==(const OltCacheDevice &, const OltCacheDevice &) = default;
};

struct CacheDevices {
  HomeCacheDevice home;
  OltCacheDevice olt;

  friend bool operator==(const CacheDevices &, const CacheDevices &) = default;
};

/// Switches between alternative readings of the model.
struct ModelFlags {
  bool apply_growth_margin_longhaul = true;
  bool rv_star_per_stream = true; // divide the global VoD peak by the sharing factor
  bool extrapolate_fit = false;   // use the fitted closed form beyond the last anchor

  friend bool operator==(const ModelFlags &, const ModelFlags &) = default;
};

/// Traffic-proportional energy added on top of static power.
struct DynamicPower {
  bool enabled = false;
  double wh_per_gb = 0.1;

  friend bool operator==(const DynamicPower &, const DynamicPower &) = default;
};

/// Everything except the scenario itself.
struct ModelInputs {
  Territory territory;
  AccessLayout access;
  EquipmentCatalog catalog;
  GlobalFactors factors;
  CoreTreeTopology topology;
  LonghaulRoute route;
  CdnConfig cdn;
  CacheDevices caches;
  ModelFlags flags;
  DynamicPower dynamic;

  friend bool operator==(const ModelInputs &, const ModelInputs &) = default;
};

inline std::vector<FieldIssue> validate(const ModelInputs &m) {
  std::vector<FieldIssue> issues;
  const auto append = [&](std::vector<FieldIssue> more) {
    issues.insert(issues.end(), more.begin(), more.end());
  };
  append(validate(m.territory, "territory."));
  append(validate(m.catalog, "catalog."));
  append(validate(m.factors, "factors."));
  append(validate(m.topology, "topology."));
  append(validate(m.route, "route."));
  append(validate(m.cdn, "cdn."));
  if (m.access.ports_per_card < 1 || m.access.cards_per_olt < 1)
    issues.push_back({"access", "ports_per_card and cards_per_olt must be >= 1"});
  if (m.access.max_split < 1)
    issues.push_back({"access.max_split", "must be >= 1"});
  const auto &home = m.caches.home;
  if (!(home.active_hours >= 0.0 && home.active_hours <= 24.0))
    issues.push_back({"caches.home.active_hours", "must lie in [0, 24]"});
  if (!(home.standby_w >= 0.0 && home.active_w >= 0.0))
    issues.push_back({"caches.home", "powers must be >= 0"});
  if (!(m.caches.olt.device_w >= 0.0))
    issues.push_back({"caches.olt.device_w", "must be >= 0"});
  if (m.caches.olt.subscribers_per_olt < 1)
    issues.push_back({"caches.olt.subscribers_per_olt", "must be >= 1"});
  if (!(m.dynamic.wh_per_gb >= 0.0))
    issues.push_back({"dynamic.wh_per_gb", "must be >= 0"});
  return issues;
}

/// Global (territory-wide) peak rates, in Gbps.
struct GlobalPeaks {
  double r_b_star_gbps = 0;
  double r_v_star_gbps = 0;
};

inline GlobalPeaks global_peaks(const Scenario &s, const Territory &territory,
                                bool rv_star_per_stream = true) {
  const double homes = double(territory.homes);
  GlobalPeaks peaks;
  peaks.r_b_star_gbps = s.baseline.s_b * homes * s.baseline.r_b_mbps / 1000.0;
  if (s.vod) {
    const double viewers = s.vod->mode == VodMode::per_inhabitant
                               ? s.vod->s_v * territory.household_dist.mean() * homes
                               : s.vod->s_v * homes;
    const double streams = rv_star_per_stream ? viewers / s.vod->sharing : viewers;
    peaks.r_v_star_gbps = streams * s.vod->r_v_mbps / 1000.0;
  } else if (s.dl) {
    peaks.r_v_star_gbps = s.dl->s_v * homes * s.dl->r_v_mbps / 1000.0;
  }
  return peaks;
}

/// Time-averaged power of a device with a daily active period.
inline double average_device_power(double standby_w, double active_w, double active_hours) {
  if (!(active_hours >= 0.0 && active_hours <= 24.0))
    throw DomainError("active hours must lie in [0, 24]");
  return (standby_w * (24.0 - active_hours) + active_w * active_hours) / 24.0;
}

struct SegmentEnergy {
  double power_w = 0;
  double energy_gwh = 0;

  static SegmentEnergy from_power(double watts) {
    return {watts, watts * kHoursPerYear / 1e9};
  }
  static SegmentEnergy from_energy(double gwh) {
    return {gwh * 1e9 / kHoursPerYear, gwh};
  }

  friend bool operator==(const SegmentEnergy &, const SegmentEnergy &) = default;
};

struct Delta {
  std::string baseline;
  double delta_gwh = 0;
  double delta_pct = 0;

  friend bool operator==(const Delta &, const Delta &) = default;
};

struct EnergyReport {
  std::string scenario;
  SegmentEnergy onu, access, national, longhaul, cdn, devices, dynamic;
  double total_power_w = 0;
  double total_gwh = 0;
  double yearly_volume_gb = 0;
  double wh_per_gb = 0;
  std::optional<Delta> delta;
  std::map<std::string, double> details; // equipment counts and peak rates
  Scenario definition;
  ModelInputs inputs;

  static constexpr std::array<const char *, 7> kSegmentNames{
      "onu", "access", "national", "longhaul", "cdn", "devices", "dynamic"};

  std::array<const SegmentEnergy *, 7> segments() const {
    return {&onu, &access, &national, &longhaul, &cdn, &devices, &dynamic};
  }
  std::array<SegmentEnergy *, 7> segments() {
    return {&onu, &access, &national, &longhaul, &cdn, &devices, &dynamic};
  }

  double yearly_volume_eb() const { return yearly_volume_gb / 1e9; }

  /// Recomputes totals and intensity from the segments.
  void close() {
    total_power_w = 0;
    total_gwh = 0;
    for (const auto *segment : segments()) {
      total_power_w += segment->power_w;
      total_gwh += segment->energy_gwh;
    }
    wh_per_gb = yearly_volume_gb > 0 ? total_gwh * 1e9 / yearly_volume_gb : 0.0;
  }

  friend bool operator==(const EnergyReport &, const EnergyReport &) = default;
};

/// Yearly traffic volume in GB.
inline double yearly_volume_gb(const Scenario &s, const Territory &territory) {
  const double homes = double(territory.homes);
  double volume = homes * s.baseline.monthly_volume_gb * 12.0;
  if (s.vod) {
    const double gb_per_hour = s.vod->r_v_mbps * 3600.0 / 8.0 / 1000.0;
    volume += homes * s.vod->daily_hours * 365.0 * gb_per_hour;
  }
  if (s.dl)
    volume += homes * s.dl->monthly_volume_gb * 12.0;
  return volume;
}

namespace detail {

inline void throw_if_invalid(const ModelInputs &inputs, const Scenario &scenario) {
  auto issues = validate(inputs);
  auto more = validate(scenario, "scenario.");
  issues.insert(issues.end(), more.begin(), more.end());
  if (!issues.empty())
    throw ConfigError(std::move(issues));
}

// Static network only: no caching devices, no dynamic add-on.
inline EnergyReport evaluate_network(const ModelInputs &in, const Scenario &s) {
  const DemandCurve demand =
      demand_curve(s, in.territory.household_dist, in.factors.epsilon,
                   DemandOptions{kDefaultAnchors, in.flags.extrapolate_fit});

  const AccessDimensions access =
      dimension_access(in.territory, demand, in.catalog, in.factors, in.access);
  const NationalDimensions national =
      dimension_national(in.territory, demand, in.topology, in.catalog, in.factors);

  const GlobalPeaks peaks = global_peaks(s, in.territory, in.flags.rv_star_per_stream);
  const bool service = s.service_active();
  const double fill = service ? cdn_fill_rate(in.cdn) : 0.0;
  const double r_u =
      longhaul_peak(fill, peaks.r_v_star_gbps, peaks.r_b_star_gbps, s.cdn_fraction(),
                    in.route, in.factors, in.flags.apply_growth_margin_longhaul);
  const LonghaulDimensions longhaul = dimension_longhaul(r_u, in.route, in.catalog, in.factors);
  const CdnDimensions cdn = dimension_cdn(peaks.r_v_star_gbps, s.cdn_fraction(), service,
                                          in.cdn, in.catalog, in.factors);

  EnergyReport report;
  report.scenario = s.name;
  report.definition = s;
  report.inputs = in;
  report.onu = SegmentEnergy::from_power(double(in.territory.homes) *
                                         in.catalog.onu.static_power_w *
                                         (1.0 - s.onu_off_fraction));
  report.access = SegmentEnergy::from_power(access.power_w);
  report.national = SegmentEnergy::from_power(national.power_w);
  report.longhaul = SegmentEnergy::from_power(longhaul.power_w);
  report.cdn = SegmentEnergy::from_power(cdn.power_w);
  report.yearly_volume_gb = yearly_volume_gb(s, in.territory);

  auto &d = report.details;
  d["peak.r_b_star_gbps"] = peaks.r_b_star_gbps;
  d["peak.r_v_star_gbps"] = peaks.r_v_star_gbps;
  d["peak.r_fill_gbps"] = fill;
  d["access.subscribers_per_gpon"] = double(access.subscribers_per_gpon);
  d["access.gpon_ports"] = double(access.gpon_ports);
  d["access.olts"] = double(access.olts);
  d["access.olt_peak_gbps"] = access.olt_peak_gbps;
  d["access.ge_ports"] = double(access.ge_ports);
  for (const auto &level : national.core) {
    const std::string key = "national.core_l" + std::to_string(level.level);
    d[key + ".peak_gbps"] = level.peak_gbps;
    d[key + ".modules_per_node"] = double(level.modules_per_node);
  }
  d["national.edge.peak_gbps"] = national.edge.peak_gbps;
  d["national.edge.modules_per_kind"] = double(national.edge.router_modules);
  d["national.link_power_w"] = national.link_power_w();
  d["longhaul.peak_gbps"] = longhaul.peak_gbps;
  d["longhaul.submarine_channels"] = double(longhaul.submarine_channels);
  d["longhaul.submarine_share"] = longhaul.submarine_share();
  d["cdn.peak_gbps"] = cdn.peak_gbps;
  d["cdn.flash_servers"] = double(cdn.flash_servers);
  return report;
}

inline Scenario with_ott_reduction(Scenario s, double reduction) {
  if (s.vod) {
    s.vod->s_v *= 1.0 - reduction;
    s.vod->daily_hours *= 1.0 - reduction;
  }
  s.cache.reset();
  return s;
}

inline void finish(EnergyReport &report, const ModelInputs &in) {
  if (in.dynamic.enabled)
    report.dynamic =
        SegmentEnergy::from_energy(report.yearly_volume_gb * in.dynamic.wh_per_gb / 1e9);
  report.close();
}

} // namespace detail

/// OTT usage cut by home caching boxes filled over the air.
inline EnergyReport evaluate_dtt_variant(const ModelInputs &in, const Scenario &s,
                                         double ott_reduction) {
  const Scenario reduced = detail::with_ott_reduction(s, ott_reduction);
  EnergyReport report = detail::evaluate_network(in, reduced);
  report.scenario = s.name;
  report.definition = s;
  const auto &box = in.caches.home;
  report.devices = SegmentEnergy::from_power(
      double(in.territory.homes) *
      average_device_power(box.standby_w, box.active_w, box.active_hours));
  report.details["devices.count"] = double(in.territory.homes);
  detail::finish(report, in);
  return report;
}

/// Same usage cut, with one caching card per OLT instead of per home.
inline EnergyReport evaluate_olt_cache_variant(const ModelInputs &in, const Scenario &s,
                                               double ott_reduction) {
  const Scenario reduced = detail::with_ott_reduction(s, ott_reduction);
  EnergyReport report = detail::evaluate_network(in, reduced);
  report.scenario = s.name;
  report.definition = s;
  const auto &card = in.caches.olt;
  const std::uint64_t devices =
      (in.territory.homes + card.subscribers_per_olt - 1) / card.subscribers_per_olt;
  report.devices = SegmentEnergy::from_power(double(devices) * card.device_w);
  report.details["devices.count"] = double(devices);
  detail::finish(report, in);
  return report;
}

/// Full pipeline for one scenario; dispatches caching variants.
inline EnergyReport evaluate(const ModelInputs &in, const Scenario &s) {
  detail::throw_if_invalid(in, s);
  if (s.cache) {
    return s.cache->kind == CacheKind::home
               ? evaluate_dtt_variant(in, s, s.cache->ott_reduction)
               : evaluate_olt_cache_variant(in, s, s.cache->ott_reduction);
  }
  EnergyReport report = detail::evaluate_network(in, s);
  detail::finish(report, in);
  return report;
}

/// Attaches deltas against `baseline` to every report.
inline void attach_deltas(std::vector<EnergyReport> &reports, const EnergyReport &baseline) {
  for (auto &report : reports) {
    const double delta = report.total_gwh - baseline.total_gwh;
    report.delta = Delta{baseline.scenario, delta,
                         baseline.total_gwh > 0 ? 100.0 * delta / baseline.total_gwh : 0.0};
  }
}

/// Parameters a sweep or a request shorthand may set.
inline const std::vector<std::string> &sweep_parameters() {
  static const std::vector<std::string> names{
      "r_v_mbps", "s_v", "sharing", "cdn_fraction", "daily_hours",
      "r_b_mbps", "s_b", "ott_reduction", "onu_off_fraction"};
  return names;
}

/// Sets one usage parameter. Usage fields (r_v_mbps, s_v, cdn_fraction) go
/// to the download block when present, otherwise to the VoD block, which is
/// created with defaults if missing.
inline void set_parameter(Scenario &s, const std::string &name, double value) {
  const auto vod = [&]() -> VodUsage & {
    if (!s.vod)
      s.vod = VodUsage{};
    return *s.vod;
  };
  if (name == "r_v_mbps" || name == "r_v")
    (s.dl ? s.dl->r_v_mbps : vod().r_v_mbps) = value;
  else if (name == "s_v")
    (s.dl ? s.dl->s_v : vod().s_v) = value;
  else if (name == "cdn_fraction")
    (s.dl ? s.dl->cdn_fraction : vod().cdn_fraction) = value;
  else if (name == "sharing")
    vod().sharing = value;
  else if (name == "daily_hours")
    vod().daily_hours = value;
  else if (name == "r_b_mbps" || name == "r_b")
    s.baseline.r_b_mbps = value;
  else if (name == "s_b")
    s.baseline.s_b = value;
  else if (name == "onu_off_fraction")
    s.onu_off_fraction = value;
  else if (name == "ott_reduction") {
    if (!s.cache)
      throw ConfigError(name, "scenario has no caching variant");
    s.cache->ott_reduction = value;
  } else {
    std::string known;
    for (const auto &n : sweep_parameters())
      known += (known.empty() ? "" : ", ") + n;
    throw ConfigError(name, "unknown parameter; expected one of " + known);
  }
}

/// One evaluation per value, with deltas against `baseline`.
inline std::vector<EnergyReport> sweep(const ModelInputs &in, const Scenario &tmpl,
                                       const std::string &parameter,
                                       const std::vector<double> &values,
                                       const EnergyReport &baseline) {
  {
    Scenario probe = tmpl;
    set_parameter(probe, parameter, values.empty() ? 0.0 : values.front());
  }
  std::vector<EnergyReport> reports;
  reports.reserve(values.size());
  for (double value : values) {
    Scenario point = tmpl;
    set_parameter(point, parameter, value);
    reports.push_back(evaluate(in, point));
  }
  attach_deltas(reports, baseline);
  return reports;
}

/// Reference scenarios: baseline, four video qualities, downloads, and the
/// caching variants of FHD and UHD.
inline std::vector<Scenario> default_scenarios() {
  const auto video = [](std::string name, double mbps) {
    Scenario s;
    s.name = std::move(name);
    s.vod = VodUsage{};
    s.vod->r_v_mbps = mbps;
    return s;
  };
  const auto cached = [&](std::string name, double mbps, CacheKind kind, double cut) {
    Scenario s = video(std::move(name), mbps);
    s.cache = CacheOption{kind, cut};
    return s;
  };
  Scenario baseline;
  baseline.name = "baseline";
  Scenario dl;
  dl.name = "DL";
  dl.dl = DownloadUsage{};
  return {baseline,
          video("HD", 3.0),
          video("FHD", 5.0),
          video("UHD", 16.0),
          video("UHD++", 27.0),
          dl,
          cached("FHD+DTT", 5.0, CacheKind::home, 0.5),
          cached("UHD+DTT", 16.0, CacheKind::home, 0.25),
          cached("FHD+OLT", 5.0, CacheKind::olt, 0.5),
          cached("UHD+OLT", 16.0, CacheKind::olt, 0.25)};
}

} // namespace netdim

#endif // NETDIM_SCENARIO_HPP
