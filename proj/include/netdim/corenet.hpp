#ifndef NETDIM_CORENET_HPP
#define NETDIM_CORENET_HPP

// National edge and core router tree between the OLTs and the main IXP.
//
// Level 0 is the IXP. Each core node has `branching` children down to level
// core_levels - 1, whose nodes each feed `edge_fanout` edge nodes. Every
// child node is linked to its parent by one WDM system sized for the child's
// own peak demand.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "netdim/access.hpp"
#include "netdim/catalog.hpp"
#include "netdim/errors.hpp"

namespace netdim {

struct CoreTreeTopology {
  std::uint64_t branching = 8;
  std::uint64_t core_levels = 3;
  std::uint64_t edge_fanout = 8;
  std::vector<double> distances_km{300.0, 300.0, 100.0}; // parent-child, per child level
  bool literal_2l = false; // node multiplicity 2^l instead of the tree's own fan-out

  friend bool operator==(const CoreTreeTopology &, const CoreTreeTopology &) = default;
};

inline std::vector<FieldIssue> validate(const CoreTreeTopology &t,
                                        const std::string &prefix) {
  std::vector<FieldIssue> issues;
  if (t.branching < 2)
    issues.push_back({prefix + "branching", "must be >= 2"});
  if (t.core_levels < 1)
    issues.push_back({prefix + "core_levels", "must be >= 1"});
  if (t.edge_fanout < 1)
    issues.push_back({prefix + "edge_fanout", "must be >= 1"});
  if (t.distances_km.size() != t.core_levels)
    issues.push_back({prefix + "distances_km",
                      "needs one distance per child level (" +
                          std::to_string(t.core_levels) + ")"});
  for (std::size_t i = 0; i < t.distances_km.size(); ++i)
    if (!(t.distances_km[i] > 0.0))
      issues.push_back({prefix + "distances_km[" + std::to_string(i) + "]", "must be > 0"});
  return issues;
}

namespace detail {
inline double modules_for(double r_gbps, double capacity_gbps) {
  return std::max(1.0, std::ceil(r_gbps / capacity_gbps));
}
} // namespace detail

/// Modules in a core router sized for r Gbps; an idle node still has one.
inline std::uint64_t core_node_modules(double r_gbps, const EquipmentCatalog &catalog) {
  return static_cast<std::uint64_t>(
      detail::modules_for(r_gbps, capacity_of(catalog.core_router_module)));
}

inline double core_node_power(double r_gbps, const EquipmentCatalog &catalog,
                              const GlobalFactors &factors) {
  return factors.pue * factors.eta * double(core_node_modules(r_gbps, catalog)) *
         catalog.core_router_module.static_power_w;
}

/// Edge router, BNG and Ethernet switch, each modular and sized for r Gbps.
inline double edge_node_power(double r_gbps, const EquipmentCatalog &catalog,
                              const GlobalFactors &factors) {
  double sum = 0.0;
  for (const PowerProfile *kind : {&catalog.ethernet_switch_module, &catalog.bng_module,
                                   &catalog.edge_router_module})
    sum += detail::modules_for(r_gbps, capacity_of(*kind)) * kind->static_power_w;
  return factors.pue * factors.eta * sum;
}

inline std::uint64_t wdm_channels(double r_gbps, const WdmSystem &wdm) {
  return static_cast<std::uint64_t>(detail::modules_for(r_gbps, wdm.channel_gbps));
}

/// Terminal multiplexers at both ends plus in-line amplifiers every spacing.
inline double wdm_link_power(double r_gbps, double dist_km, const WdmSystem &wdm,
                             const GlobalFactors &factors) {
  if (!(dist_km > 0.0))
    throw DomainError("WDM link distance must be positive");
  const double amplifiers =
      std::max(0.0, std::ceil(dist_km / wdm.amplifier_spacing_km - 1.0));
  return factors.eta * double(wdm_channels(r_gbps, wdm)) *
         (factors.pue * 2.0 * wdm.terminal_w_per_channel +
          amplifiers * wdm.amplifier_w_per_channel);
}

struct CoreLevel {
  std::uint64_t level = 0;
  double nodes = 0;
  double homes_per_node = 0;
  double peak_gbps = 0; // margined
  std::uint64_t modules_per_node = 0;
  double power_w = 0;   // all nodes of the level
};

struct EdgeLevel {
  double nodes = 0;
  double homes_per_node = 0;
  double peak_gbps = 0;
  std::uint64_t ethernet_modules = 0;
  std::uint64_t bng_modules = 0;
  std::uint64_t router_modules = 0;
  double power_w = 0;
};

struct LinkLevel {
  std::uint64_t child_level = 0;
  double links = 0;
  double distance_km = 0;
  double peak_gbps = 0;
  std::uint64_t channels_per_link = 0;
  double power_w = 0;
};

struct NationalDimensions {
  std::vector<CoreLevel> core;
  EdgeLevel edge;
  std::vector<LinkLevel> links;
  double power_w = 0;

  double node_power_w() const {
    double sum = edge.power_w;
    for (const auto &level : core)
      sum += level.power_w;
    return sum;
  }
  double link_power_w() const {
    double sum = 0;
    for (const auto &link : links)
      sum += link.power_w;
    return sum;
  }
};

/// Nodes at tree level l (the edge level is core_levels).
inline double nodes_at_level(const CoreTreeTopology &topology, std::uint64_t level) {
  if (topology.literal_2l)
    return std::pow(2.0, double(level));
  if (level < topology.core_levels)
    return std::pow(double(topology.branching), double(level));
  return std::pow(double(topology.branching), double(topology.core_levels - 1)) *
         double(topology.edge_fanout);
}

template <class Demand>
NationalDimensions dimension_national(const Territory &territory, const Demand &demand,
                                      const CoreTreeTopology &topology,
                                      const EquipmentCatalog &catalog,
                                      const GlobalFactors &factors) {
  if (auto issues = validate(topology, "topology."); !issues.empty())
    throw ConfigError(std::move(issues));

  NationalDimensions dims;
  const auto peak_at = [&](std::uint64_t level) {
    const double homes = double(territory.homes) / nodes_at_level(topology, level);
    return std::pair{homes, factors.alpha_t * demand.gbps(homes)};
  };

  for (std::uint64_t l = 0; l < topology.core_levels; ++l) {
    CoreLevel level;
    level.level = l;
    level.nodes = nodes_at_level(topology, l);
    std::tie(level.homes_per_node, level.peak_gbps) = peak_at(l);
    level.modules_per_node = core_node_modules(level.peak_gbps, catalog);
    level.power_w = level.nodes * core_node_power(level.peak_gbps, catalog, factors);
    dims.core.push_back(level);
  }

  const std::uint64_t edge = topology.core_levels;
  dims.edge.nodes = nodes_at_level(topology, edge);
  std::tie(dims.edge.homes_per_node, dims.edge.peak_gbps) = peak_at(edge);
  dims.edge.ethernet_modules = static_cast<std::uint64_t>(detail::modules_for(
      dims.edge.peak_gbps, capacity_of(catalog.ethernet_switch_module)));
  dims.edge.bng_modules = static_cast<std::uint64_t>(
      detail::modules_for(dims.edge.peak_gbps, capacity_of(catalog.bng_module)));
  dims.edge.router_modules = static_cast<std::uint64_t>(
      detail::modules_for(dims.edge.peak_gbps, capacity_of(catalog.edge_router_module)));
  dims.edge.power_w =
      dims.edge.nodes * edge_node_power(dims.edge.peak_gbps, catalog, factors);

  for (std::uint64_t child = 1; child <= topology.core_levels; ++child) {
    LinkLevel link;
    link.child_level = child;
    // Literal multiplicity counts links per parent level, as typeset.
    link.links = topology.literal_2l ? nodes_at_level(topology, child - 1)
                                     : nodes_at_level(topology, child);
    link.distance_km = topology.distances_km[child - 1];
    link.peak_gbps = child < edge ? dims.core[child].peak_gbps : dims.edge.peak_gbps;
    link.channels_per_link = wdm_channels(link.peak_gbps, catalog.wdm);
    link.power_w =
        link.links * wdm_link_power(link.peak_gbps, link.distance_km, catalog.wdm, factors);
    dims.links.push_back(link);
  }

  dims.power_w = dims.node_power_w() + dims.link_power_w();
  return dims;
}

} // namespace netdim

#endif // NETDIM_CORENET_HPP
