#ifndef NETDIM_CONFIG_HPP
#define NETDIM_CONFIG_HPP

// Run configuration: one schema, two encodings. Files are YAML, the HTTP
// API speaks JSON; both map onto the same tree of field names. Every
// document is a partial override applied on top of the built-in defaults.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>
#include <yaml-cpp/yaml.h>

#include "netdim/errors.hpp"
#include "netdim/scenario.hpp"

namespace netdim {

using Json = nlohmann::ordered_json;

enum class OutputFormat { table, json };

struct OutputOptions {
  OutputFormat format = OutputFormat::table;
  bool verbose = false;

  friend bool operator==(const OutputOptions &, const OutputOptions &) = default;
};

struct RunConfig {
  ModelInputs model;
  std::vector<Scenario> scenarios = default_scenarios();
  std::string baseline = "baseline";
  OutputOptions output;

  std::vector<std::string> scenario_names() const {
    std::vector<std::string> names;
    for (const auto &s : scenarios)
      names.push_back(s.name);
    return names;
  }

  const Scenario *find(std::string_view name) const {
    for (const auto &s : scenarios)
      if (s.name == name)
        return &s;
    return nullptr;
  }

  /// Named scenario; unknown names raise a ConfigError listing the known ones.
  const Scenario &scenario(std::string_view name) const {
    if (const Scenario *s = find(name))
      return *s;
    std::string known;
    for (const auto &n : scenario_names())
      known += (known.empty() ? "" : ", ") + n;
    throw ConfigError("scenario", "unknown scenario '" + std::string(name) +
                                      "'; available: " + known);
  }

  friend bool operator==(const RunConfig &, const RunConfig &) = default;
};

// ---------------------------------------------------------------------------
// Serialization

inline Json to_json(const PowerProfile &p) {
  Json j{{"power_w", p.static_power_w}};
  if (p.capacity_gbps)
    j["capacity_gbps"] = *p.capacity_gbps;
  return j;
}

inline Json to_json(const EquipmentCatalog &c) {
  return Json{{"onu", to_json(c.onu)},
              {"gpon_port", to_json(c.gpon_port)},
              {"ge_port", to_json(c.ge_port)},
              {"ethernet_switch_module", to_json(c.ethernet_switch_module)},
              {"bng_module", to_json(c.bng_module)},
              {"edge_router_module", to_json(c.edge_router_module)},
              {"core_router_module", to_json(c.core_router_module)},
              {"flash_server", to_json(c.flash_server)},
              {"storage_server", to_json(c.storage_server)},
              {"wdm",
               {{"terminal_w_per_channel", c.wdm.terminal_w_per_channel},
                {"amplifier_w_per_channel", c.wdm.amplifier_w_per_channel},
                {"amplifier_spacing_km", c.wdm.amplifier_spacing_km},
                {"channel_gbps", c.wdm.channel_gbps}}}};
}

inline Json to_json(const HouseholdDistribution &d) {
  Json j = Json::object();
  for (const auto &[size, p] : d.probabilities())
    j[std::to_string(size)] = p;
  return j;
}

inline Json to_json(const ModelInputs &m) {
  const auto &t = m.territory;
  const auto &r = m.route;
  return Json{
      {"territory",
       {{"inhabitants", t.inhabitants},
        {"homes", t.homes},
        {"hubs", t.hubs},
        {"household_distribution", to_json(t.household_dist)}}},
      {"access",
       {{"ports_per_card", m.access.ports_per_card},
        {"cards_per_olt", m.access.cards_per_olt},
        {"max_split", m.access.max_split}}},
      {"catalog", to_json(m.catalog)},
      {"factors",
       {{"pue", m.factors.pue},
        {"eta", m.factors.eta},
        {"alpha_t", m.factors.alpha_t},
        {"alpha_u", m.factors.alpha_u},
        {"epsilon", m.factors.epsilon.value()}}},
      {"topology",
       {{"branching", m.topology.branching},
        {"core_levels", m.topology.core_levels},
        {"edge_fanout", m.topology.edge_fanout},
        {"distances_km", m.topology.distances_km}}},
      {"route",
       {{"terrestrial_segments_km", r.terrestrial_segments_km},
        {"transit_core_nodes", r.transit_core_nodes},
        {"submarine_length_km", r.submarine_length_km},
        {"repeater_spacing_km", r.repeater_spacing_km},
        {"terminal_w_per_channel", r.terminal_w_per_channel},
        {"repeater_w_per_channel", r.repeater_w_per_channel},
        {"feed_efficiency", r.feed_efficiency},
        {"cable_loss_w_per_km", r.cable_loss_w_per_km},
        {"channel_gbps", r.channel_gbps},
        {"international_baseline_share", r.international_baseline_share}}},
      {"cdn",
       {{"storage_servers", m.cdn.storage_servers},
        {"storage_capacity_tb", m.cdn.storage_capacity_tb},
        {"daily_update_fraction", m.cdn.daily_update_fraction},
        {"fill_window_h", m.cdn.fill_window_h}}},
      {"caches",
       {{"home",
         {{"standby_w", m.caches.home.standby_w},
          {"active_w", m.caches.home.active_w},
          {"active_hours", m.caches.home.active_hours}}},
        {"olt",
         {{"device_w", m.caches.olt.device_w},
          {"subscribers_per_olt", m.caches.olt.subscribers_per_olt}}}}},
      {"flags",
       {{"literal_2l", m.topology.literal_2l},
        {"apply_growth_margin_longhaul", m.flags.apply_growth_margin_longhaul},
        {"rv_star_per_stream", m.flags.rv_star_per_stream},
        {"extrapolate_fit", m.flags.extrapolate_fit}}},
      {"dynamic", {{"enabled", m.dynamic.enabled}, {"wh_per_gb", m.dynamic.wh_per_gb}}}};
}

inline Json to_json(const Scenario &s) {
  Json j{{"name", s.name},
         {"baseline",
          {{"r_b_mbps", s.baseline.r_b_mbps},
           {"s_b", s.baseline.s_b},
           {"monthly_volume_gb", s.baseline.monthly_volume_gb}}},
         {"vod", nullptr},
         {"dl", nullptr},
         {"cache", nullptr},
         {"onu_off_fraction", s.onu_off_fraction}};
  if (s.vod)
    j["vod"] = Json{{"r_v_mbps", s.vod->r_v_mbps},
                    {"s_v", s.vod->s_v},
                    {"sharing", s.vod->sharing},
                    {"cdn_fraction", s.vod->cdn_fraction},
                    {"daily_hours", s.vod->daily_hours},
                    {"mode", s.vod->mode == VodMode::per_inhabitant ? "per_inhabitant"
                                                                    : "per_subscriber"}};
  if (s.dl)
    j["dl"] = Json{{"r_v_mbps", s.dl->r_v_mbps},
                   {"s_v", s.dl->s_v},
                   {"epsilon", s.dl->epsilon},
                   {"monthly_volume_gb", s.dl->monthly_volume_gb},
                   {"cdn_fraction", s.dl->cdn_fraction}};
  if (s.cache)
    j["cache"] = Json{{"kind", s.cache->kind == CacheKind::home ? "home" : "olt"},
                      {"ott_reduction", s.cache->ott_reduction}};
  return j;
}

inline Json to_json(const RunConfig &c) {
  Json j = to_json(c.model);
  j["baseline"] = c.baseline;
  Json scenarios = Json::array();
  for (const auto &s : c.scenarios)
    scenarios.push_back(to_json(s));
  j["scenarios"] = std::move(scenarios);
  j["output"] = Json{{"format", c.output.format == OutputFormat::table ? "table" : "json"},
                     {"verbose", c.output.verbose}};
  return j;
}

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

// Reads known keys of one object into existing values and reports the rest.
class ObjectReader {
public:
  ObjectReader(const Json &j, std::string path, std::vector<FieldIssue> &issues)
      : j_(j), path_(std::move(path)), issues_(issues) {
    if (!j_.is_object())
      issue(path_.empty() ? "(root)" : path_, "expected an object");
  }

  ObjectReader(const ObjectReader &) = delete;
  ObjectReader &operator=(const ObjectReader &) = delete;

  ~ObjectReader() {
    if (!j_.is_object())
      return;
    for (const auto &[key, value] : j_.items())
      if (!known_.count(key))
        issue(child(key), "unknown field");
  }

  bool valid() const { return j_.is_object(); }
  std::vector<FieldIssue> &issues() { return issues_; }

  /// Present and non-null; marks the key as known either way.
  const Json *get(const std::string &key) {
    known_.insert(key);
    if (!j_.is_object())
      return nullptr;
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  std::string child(const std::string &key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  void issue(const std::string &field, const std::string &message) {
    issues_.push_back({field, message});
  }

  void number(const std::string &key, double &out) {
    if (const Json *v = get(key)) {
      if (v->is_number())
        out = v->get<double>();
      else
        issue(child(key), "expected a number");
    }
  }

  void count(const std::string &key, std::uint64_t &out) {
    if (const Json *v = get(key)) {
      if (v->is_number_unsigned())
        out = v->get<std::uint64_t>();
      else if (v->is_number_integer() && v->get<std::int64_t>() >= 0)
        out = static_cast<std::uint64_t>(v->get<std::int64_t>());
      else if (v->is_number_float() && v->get<double>() >= 0 &&
               v->get<double>() == std::floor(v->get<double>()) && v->get<double>() < 1e19)
        out = static_cast<std::uint64_t>(v->get<double>());
      else
        issue(child(key), "expected a non-negative integer");
    }
  }

  void flag(const std::string &key, bool &out) {
    if (const Json *v = get(key)) {
      if (v->is_boolean())
        out = v->get<bool>();
      else
        issue(child(key), "expected true or false");
    }
  }

  void text(const std::string &key, std::string &out) {
    if (const Json *v = get(key)) {
      if (v->is_string())
        out = v->get<std::string>();
      else
        issue(child(key), "expected a string");
    }
  }

  void numbers(const std::string &key, std::vector<double> &out) {
    if (const Json *v = get(key)) {
      if (!v->is_array()) {
        issue(child(key), "expected a list of numbers");
        return;
      }
      std::vector<double> values;
      for (const auto &item : *v) {
        if (!item.is_number()) {
          issue(child(key), "expected a list of numbers");
          return;
        }
        values.push_back(item.get<double>());
      }
      out = std::move(values);
    }
  }

  template <class Fn> void object(const std::string &key, Fn &&fn) {
    if (const Json *v = get(key)) {
      ObjectReader nested(*v, child(key), issues_);
      if (nested.valid())
        fn(nested);
    }
  }

private:
  const Json &j_;
  std::string path_;
  std::vector<FieldIssue> &issues_;
  std::set<std::string> known_;
};

inline void read_profile(ObjectReader &r, PowerProfile &p) {
  r.number("power_w", p.static_power_w);
  if (const Json *v = r.get("capacity_gbps")) {
    if (v->is_number())
      p.capacity_gbps = v->get<double>();
    else
      r.issue(r.child("capacity_gbps"), "expected a number");
  }
}

inline void read_model(ObjectReader &r, ModelInputs &m) {
  r.object("territory", [&](ObjectReader &t) {
    t.number("inhabitants", m.territory.inhabitants);
    t.count("homes", m.territory.homes);
    t.count("hubs", m.territory.hubs);
    if (const Json *v = t.get("household_distribution")) {
      const std::string field = t.child("household_distribution");
      if (!v->is_object()) {
        t.issue(field, "expected a map from household size to probability");
      } else {
        std::map<unsigned, double> probabilities;
        bool ok = true;
        for (const auto &[key, p] : v->items()) {
          unsigned size = 0;
          const auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), size);
          if (ec != std::errc() || ptr != key.data() + key.size() || !p.is_number()) {
            t.issue(field + "." + key, "expected an integer size mapped to a probability");
            ok = false;
            continue;
          }
          probabilities[size] = p.get<double>();
        }
        if (ok) {
          try {
            m.territory.household_dist = HouseholdDistribution(std::move(probabilities));
          } catch (const DomainError &e) {
            t.issue(field, e.what());
          }
        }
      }
    }
  });
  r.object("access", [&](ObjectReader &a) {
    a.count("ports_per_card", m.access.ports_per_card);
    a.count("cards_per_olt", m.access.cards_per_olt);
    a.count("max_split", m.access.max_split);
  });
  r.object("catalog", [&](ObjectReader &c) {
    const std::pair<const char *, PowerProfile *> kinds[] = {
        {"onu", &m.catalog.onu},
        {"gpon_port", &m.catalog.gpon_port},
        {"ge_port", &m.catalog.ge_port},
        {"ethernet_switch_module", &m.catalog.ethernet_switch_module},
        {"bng_module", &m.catalog.bng_module},
        {"edge_router_module", &m.catalog.edge_router_module},
        {"core_router_module", &m.catalog.core_router_module},
        {"flash_server", &m.catalog.flash_server},
        {"storage_server", &m.catalog.storage_server}};
    for (const auto &[name, profile] : kinds)
      c.object(name, [&, profile = profile](ObjectReader &p) { read_profile(p, *profile); });
    c.object("wdm", [&](ObjectReader &w) {
      w.number("terminal_w_per_channel", m.catalog.wdm.terminal_w_per_channel);
      w.number("amplifier_w_per_channel", m.catalog.wdm.amplifier_w_per_channel);
      w.number("amplifier_spacing_km", m.catalog.wdm.amplifier_spacing_km);
      w.number("channel_gbps", m.catalog.wdm.channel_gbps);
    });
  });
  r.object("factors", [&](ObjectReader &f) {
    f.number("pue", m.factors.pue);
    f.number("eta", m.factors.eta);
    f.number("alpha_t", m.factors.alpha_t);
    f.number("alpha_u", m.factors.alpha_u);
    double eps = m.factors.epsilon.value();
    f.number("epsilon", eps);
    try {
      m.factors.epsilon = ConfidenceLevel(eps);
    } catch (const DomainError &e) {
      f.issue(f.child("epsilon"), e.what());
    }
  });
  r.object("topology", [&](ObjectReader &t) {
    t.count("branching", m.topology.branching);
    t.count("core_levels", m.topology.core_levels);
    t.count("edge_fanout", m.topology.edge_fanout);
    t.numbers("distances_km", m.topology.distances_km);
  });
  r.object("route", [&](ObjectReader &t) {
    auto &route = m.route;
    t.numbers("terrestrial_segments_km", route.terrestrial_segments_km);
    t.count("transit_core_nodes", route.transit_core_nodes);
    t.number("submarine_length_km", route.submarine_length_km);
    t.number("repeater_spacing_km", route.repeater_spacing_km);
    t.number("terminal_w_per_channel", route.terminal_w_per_channel);
    t.number("repeater_w_per_channel", route.repeater_w_per_channel);
    t.number("feed_efficiency", route.feed_efficiency);
    t.number("cable_loss_w_per_km", route.cable_loss_w_per_km);
    t.number("channel_gbps", route.channel_gbps);
    t.number("international_baseline_share", route.international_baseline_share);
  });
  r.object("cdn", [&](ObjectReader &c) {
    c.count("storage_servers", m.cdn.storage_servers);
    c.number("storage_capacity_tb", m.cdn.storage_capacity_tb);
    c.number("daily_update_fraction", m.cdn.daily_update_fraction);
    c.number("fill_window_h", m.cdn.fill_window_h);
  });
  r.object("caches", [&](ObjectReader &c) {
    c.object("home", [&](ObjectReader &h) {
      h.number("standby_w", m.caches.home.standby_w);
      h.number("active_w", m.caches.home.active_w);
      h.number("active_hours", m.caches.home.active_hours);
    });
    c.object("olt", [&](ObjectReader &o) {
      o.number("device_w", m.caches.olt.device_w);
      o.count("subscribers_per_olt", m.caches.olt.subscribers_per_olt);
    });
  });
  r.object("flags", [&](ObjectReader &f) {
    f.flag("literal_2l", m.topology.literal_2l);
    f.flag("apply_growth_margin_longhaul", m.flags.apply_growth_margin_longhaul);
    f.flag("rv_star_per_stream", m.flags.rv_star_per_stream);
    f.flag("extrapolate_fit", m.flags.extrapolate_fit);
  });
  r.object("dynamic", [&](ObjectReader &d) {
    d.flag("enabled", m.dynamic.enabled);
    d.number("wh_per_gb", m.dynamic.wh_per_gb);
  });
}

// Optional sub-blocks: null removes, an object creates (from defaults) or updates.
template <class T, class Fn>
void read_optional(ObjectReader &r, const std::string &key, std::optional<T> &out, Fn &&fn) {
  const Json *v = r.get(key);
  if (!v)
    return;
  if (v->is_null()) {
    out.reset();
    return;
  }
  ObjectReader nested(*v, r.child(key), r.issues());
  if (!nested.valid())
    return;
  if (!out)
    out = T{};
  fn(nested, *out);
}

inline void read_scenario(ObjectReader &r, Scenario &s) {
  r.text("name", s.name);
  r.object("baseline", [&](ObjectReader &b) {
    b.number("r_b_mbps", s.baseline.r_b_mbps);
    b.number("s_b", s.baseline.s_b);
    b.number("monthly_volume_gb", s.baseline.monthly_volume_gb);
  });
  read_optional(r, "vod", s.vod, [](ObjectReader &v, VodUsage &u) {
    v.number("r_v_mbps", u.r_v_mbps);
    v.number("s_v", u.s_v);
    v.number("sharing", u.sharing);
    v.number("cdn_fraction", u.cdn_fraction);
    v.number("daily_hours", u.daily_hours);
    std::string mode;
    v.text("mode", mode);
    if (mode == "per_inhabitant")
      u.mode = VodMode::per_inhabitant;
    else if (mode == "per_subscriber")
      u.mode = VodMode::per_subscriber;
    else if (!mode.empty())
      v.issue(v.child("mode"), "expected per_inhabitant or per_subscriber");
  });
  read_optional(r, "dl", s.dl, [](ObjectReader &v, DownloadUsage &u) {
    v.number("r_v_mbps", u.r_v_mbps);
    v.number("s_v", u.s_v);
    v.number("epsilon", u.epsilon);
    v.number("monthly_volume_gb", u.monthly_volume_gb);
    v.number("cdn_fraction", u.cdn_fraction);
  });
  read_optional(r, "cache", s.cache, [](ObjectReader &v, CacheOption &c) {
    std::string kind;
    v.text("kind", kind);
    if (kind == "home")
      c.kind = CacheKind::home;
    else if (kind == "olt")
      c.kind = CacheKind::olt;
    else if (!kind.empty())
      v.issue(v.child("kind"), "expected home or olt");
    v.number("ott_reduction", c.ott_reduction);
  });
  r.number("onu_off_fraction", s.onu_off_fraction);
}

inline std::vector<FieldIssue> validate(const RunConfig &c) {
  auto issues = validate(c.model);
  std::set<std::string> names;
  for (std::size_t i = 0; i < c.scenarios.size(); ++i) {
    const std::string prefix = "scenarios[" + std::to_string(i) + "].";
    auto more = validate(c.scenarios[i], prefix);
    issues.insert(issues.end(), more.begin(), more.end());
    if (!names.insert(c.scenarios[i].name).second)
      issues.push_back({prefix + "name", "duplicate scenario name '" + c.scenarios[i].name + "'"});
  }
  if (!names.count(c.baseline))
    issues.push_back({"baseline", "no scenario named '" + c.baseline + "'"});
  return issues;
}

} // namespace detail

/// Applies the model sections of `j` (territory, catalog, ...) onto `m`.
inline void apply_model(const Json &j, ModelInputs &m, std::vector<FieldIssue> &issues,
                        const std::string &path = "") {
  detail::ObjectReader r(j, path, issues);
  if (r.valid())
    detail::read_model(r, m);
}

/// Applies a partial scenario document onto `s`; throws ConfigError.
inline void apply_scenario(const Json &j, Scenario &s, const std::string &path = "scenario") {
  std::vector<FieldIssue> issues;
  {
    detail::ObjectReader r(j, path, issues);
    if (r.valid())
      detail::read_scenario(r, s);
  }
  if (!issues.empty())
    throw ConfigError(std::move(issues));
}

/// Applies a partial configuration document; scenarios are merged by name
/// onto the existing list, new names are appended. Throws ConfigError with
/// every problem found, including validation of the merged result.
inline void apply_config(const Json &j, RunConfig &c) {
  std::vector<FieldIssue> issues;
  {
    detail::ObjectReader r(j, "", issues);
    if (r.valid()) {
      detail::read_model(r, c.model);
      r.text("baseline", c.baseline);
      if (const Json *list = r.get("scenarios")) {
        if (!list->is_array()) {
          r.issue("scenarios", "expected a list of scenarios");
        } else {
          for (std::size_t i = 0; i < list->size(); ++i) {
            const Json &entry = (*list)[i];
            const std::string path = "scenarios[" + std::to_string(i) + "]";
            if (!entry.is_object() || !entry.contains("name") || !entry["name"].is_string()) {
              issues.push_back({path + ".name", "every scenario needs a name"});
              continue;
            }
            const std::string name = entry["name"].get<std::string>();
            auto it = std::find_if(c.scenarios.begin(), c.scenarios.end(),
                                   [&](const Scenario &s) { return s.name == name; });
            if (it == c.scenarios.end()) {
              Scenario fresh;
              fresh.name = name;
              c.scenarios.push_back(fresh);
              it = std::prev(c.scenarios.end());
            }
            detail::ObjectReader sr(entry, path, issues);
            detail::read_scenario(sr, *it);
          }
        }
      }
      r.object("output", [&](detail::ObjectReader &o) {
        std::string format;
        o.text("format", format);
        if (format == "table")
          c.output.format = OutputFormat::table;
        else if (format == "json")
          c.output.format = OutputFormat::json;
        else if (!format.empty())
          o.issue(o.child("format"), "expected table or json");
        o.flag("verbose", c.output.verbose);
      });
    }
  }
  if (issues.empty())
    issues = detail::validate(c);
  if (!issues.empty())
    throw ConfigError(std::move(issues));
}

// ---------------------------------------------------------------------------
// YAML

namespace detail {

inline Json yaml_scalar(const YAML::Node &node) {
  const std::string &text = node.Scalar();
  if (node.Tag() == "!") // quoted: always a string
    return text;
  if (text.empty() || text == "~" || text == "null" || text == "Null" || text == "NULL")
    return nullptr;
  if (text == "true" || text == "True" || text == "TRUE")
    return true;
  if (text == "false" || text == "False" || text == "FALSE")
    return false;
  const char *first = text.data();
  const char *last = first + text.size();
  if (text.find_first_of(".eEnN") == std::string::npos) {
    if (text[0] == '-') {
      std::int64_t i = 0;
      auto [p, ec] = std::from_chars(first, last, i);
      if (ec == std::errc() && p == last)
        return i;
    } else {
      std::uint64_t u = 0;
      auto [p, ec] = std::from_chars(first + (text[0] == '+'), last, u);
      if (ec == std::errc() && p == last)
        return u;
    }
  }
  double d = 0;
  auto [p, ec] = std::from_chars(first + (text[0] == '+'), last, d);
  if (ec == std::errc() && p == last && std::isfinite(d))
    return d;
  return text;
}

inline Json yaml_to_json(const YAML::Node &node) {
  switch (node.Type()) {
  case YAML::NodeType::Null:
  case YAML::NodeType::Undefined:
    return nullptr;
  case YAML::NodeType::Scalar:
    return yaml_scalar(node);
  case YAML::NodeType::Sequence: {
    Json array = Json::array();
    for (const auto &item : node)
      array.push_back(yaml_to_json(item));
    return array;
  }
  case YAML::NodeType::Map: {
    Json object = Json::object();
    for (const auto &item : node)
      object[item.first.Scalar()] = yaml_to_json(item.second);
    return object;
  }
  }
  return nullptr;
}

/// Shortest decimal text that reads back to the same double.
inline std::string format_double(double v) {
  char buffer[64];
  auto [p, ec] = std::to_chars(buffer, buffer + sizeof buffer, v);
  return std::string(buffer, p);
}

inline bool plain_key(const std::string &key) {
  if (key.empty() || !(std::isalpha(static_cast<unsigned char>(key[0])) || key[0] == '_'))
    return false;
  return std::all_of(key.begin(), key.end(), [](char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '+';
  });
}

inline std::string yaml_key(const std::string &key) {
  return plain_key(key) ? key : Json(key).dump();
}

inline std::string yaml_value(const Json &j) {
  switch (j.type()) {
  case Json::value_t::null:
    return "null";
  case Json::value_t::boolean:
    return j.get<bool>() ? "true" : "false";
  case Json::value_t::number_float:
    return format_double(j.get<double>());
  case Json::value_t::string:
    return j.dump(); // double-quoted JSON strings are valid YAML
  case Json::value_t::array:
    return "[]";
  case Json::value_t::object:
    return "{}";
  default:
    return j.dump();
  }
}

inline bool is_block(const Json &j) {
  return (j.is_object() || j.is_array()) && !j.empty();
}

inline bool scalar_list(const Json &j) {
  return j.is_array() &&
         std::all_of(j.begin(), j.end(), [](const Json &v) { return !v.is_structured(); });
}

inline void emit_yaml(const Json &j, int indent, std::string &out);

inline void emit_entry_value(const Json &value, int indent, std::string &out) {
  if (scalar_list(value) && !value.empty()) {
    out += " [";
    bool first = true;
    for (const auto &item : value) {
      out += first ? "" : ", ";
      out += yaml_value(item);
      first = false;
    }
    out += "]\n";
  } else if (is_block(value)) {
    out += "\n";
    emit_yaml(value, indent + 2, out);
  } else {
    out += " " + yaml_value(value) + "\n";
  }
}

inline void emit_yaml(const Json &j, int indent, std::string &out) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    for (const auto &[key, value] : j.items()) {
      out += pad + yaml_key(key) + ":";
      emit_entry_value(value, indent, out);
    }
  } else if (j.is_array()) {
    for (const auto &item : j) {
      if (item.is_object() && !item.empty()) {
        // first key on the dash line, the rest aligned under it
        std::string nested;
        emit_yaml(item, indent + 2, nested);
        out += pad + "- " + nested.substr(static_cast<std::size_t>(indent) + 2);
      } else {
        out += pad + "-";
        emit_entry_value(item, indent, out);
      }
    }
  }
}

} // namespace detail

/// Parses YAML text into the JSON tree used by the config readers.
inline Json parse_yaml(std::string_view text) {
  try {
    YAML::Node root = YAML::Load(std::string(text));
    if (!root || root.IsNull())
      return Json::object();
    return detail::yaml_to_json(root);
  } catch (const YAML::Exception &e) {
    throw ConfigError("(yaml)", e.what());
  }
}

/// Block-style YAML; numbers use the shortest round-trip representation.
inline std::string to_yaml(const Json &j) {
  if (!detail::is_block(j))
    return detail::yaml_value(j) + "\n";
  std::string out;
  detail::emit_yaml(j, 0, out);
  return out;
}

inline RunConfig load_config_text(std::string_view yaml, RunConfig base = {}) {
  apply_config(parse_yaml(yaml), base);
  return base;
}

inline RunConfig load_config_file(const std::string &path, RunConfig base = {}) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("config", "cannot read '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_config_text(buffer.str(), std::move(base));
}

/// The built-in defaults as a complete YAML document.
inline std::string default_config_yaml() { return to_yaml(to_json(RunConfig{})); }

} // namespace netdim

#endif // NETDIM_CONFIG_HPP
