#ifndef NETDIM_REPORT_HPP
#define NETDIM_REPORT_HPP

// Rendering of evaluation results: fixed-width tables for people, versioned
// JSON documents for programs. All number formatting is locale independent.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "netdim/config.hpp"
#include "netdim/errors.hpp"
#include "netdim/scenario.hpp"

namespace netdim {

inline constexpr const char *kReportSchema = "netdim.report/1";
inline constexpr const char *kCompareSchema = "netdim.compare/1";
inline constexpr const char *kSweepSchema = "netdim.sweep/1";

/// Fixed-point text with `decimals` digits after the point.
inline std::string format_fixed(double v, int decimals) {
  char buffer[64];
  auto [p, ec] = std::to_chars(buffer, buffer + sizeof buffer, v, std::chars_format::fixed,
                               decimals);
  std::string text(buffer, p);
  if (text.find_first_not_of("-0.") == std::string::npos)
    return decimals > 0 ? "0." + std::string(static_cast<std::size_t>(decimals), '0') : "0";
  return text;
}

/// Three significant figures for small values, integers for large ones.
inline std::string format_energy(double gwh) {
  if (gwh == 0.0)
    return "0";
  const double magnitude = std::fabs(gwh);
  const int digits = int(std::floor(std::log10(magnitude))) + 1; // 0.0123 -> -1
  const int decimals = std::clamp(3 - digits, 0, 6);
  std::string text = format_fixed(gwh, decimals);
  // rounding may add a digit (9.995 -> 10.00); trim one decimal when it does
  if (decimals > 0) {
    const double rounded = std::fabs(std::stod(text));
    if (rounded >= std::pow(10.0, digits))
      text = format_fixed(gwh, decimals - 1);
  }
  return text;
}

/// Signed whole percentage, as in "+17%".
inline std::string format_percent(double pct) {
  const double rounded = std::round(pct);
  std::string text = format_fixed(rounded == 0.0 ? 0.0 : rounded, 0);
  return (rounded >= 0 ? "+" : "") + text + "%";
}

// ---------------------------------------------------------------------------
// Tables

namespace detail {

struct Column {
  std::string title;
  bool left = false;
};

inline std::string render_grid(const std::vector<Column> &columns,
                               const std::vector<std::vector<std::string>> &rows) {
  std::vector<std::size_t> width(columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    width[c] = columns[c].title.size();
    for (const auto &row : rows)
      width[c] = std::max(width[c], row[c].size());
  }
  const auto cell = [&](const std::string &text, std::size_t c) {
    const std::string fill(width[c] - text.size(), ' ');
    return columns[c].left ? text + fill : fill + text;
  };
  std::string out;
  for (std::size_t c = 0; c < columns.size(); ++c)
    out += (c ? " | " : "") + cell(columns[c].title, c);
  out += "\n";
  for (std::size_t c = 0; c < columns.size(); ++c)
    out += (c ? "-+-" : "") + std::string(width[c], '-');
  out += "\n";
  for (const auto &row : rows) {
    for (std::size_t c = 0; c < columns.size(); ++c)
      out += (c ? " | " : "") + cell(row[c], c);
    out += "\n";
  }
  return out;
}

inline const EnergyReport &find_report(const std::vector<EnergyReport> &reports,
                                       const std::string &name) {
  for (const auto &r : reports)
    if (r.scenario == name)
      return r;
  throw RenderError("baseline scenario '" + name + "' is not among the rendered reports");
}

inline double delta_pct(const EnergyReport &r, const EnergyReport &base) {
  return base.total_gwh > 0 ? 100.0 * (r.total_gwh - base.total_gwh) / base.total_gwh : 0.0;
}

} // namespace detail

/// Yearly energy per segment in GWh, percentage change against `baseline`,
/// and a footer with traffic volume and energy per GB.
inline std::string render_table(const std::vector<EnergyReport> &reports,
                                const std::string &baseline) {
  const EnergyReport &base = detail::find_report(reports, baseline);
  const bool devices = std::any_of(reports.begin(), reports.end(),
                                   [](const auto &r) { return r.devices.energy_gwh != 0.0; });
  const bool dynamic = std::any_of(reports.begin(), reports.end(),
                                   [](const auto &r) { return r.dynamic.energy_gwh != 0.0; });

  std::vector<detail::Column> columns{{"Scenario (GWh/yr)", true}, {"ONU"},
                                      {"Access"},                  {"National Core+Edge"},
                                      {"Int. longhaul"},           {"CDN"}};
  if (devices)
    columns.push_back({"Devices"});
  if (dynamic)
    columns.push_back({"Dynamic"});
  columns.push_back({"Total"});
  columns.push_back({"Delta"});

  std::vector<std::vector<std::string>> rows;
  for (const auto &r : reports) {
    std::vector<std::string> row{r.scenario,
                                 format_energy(r.onu.energy_gwh),
                                 format_energy(r.access.energy_gwh),
                                 format_energy(r.national.energy_gwh),
                                 format_energy(r.longhaul.energy_gwh),
                                 format_energy(r.cdn.energy_gwh)};
    if (devices)
      row.push_back(format_energy(r.devices.energy_gwh));
    if (dynamic)
      row.push_back(format_energy(r.dynamic.energy_gwh));
    row.push_back(format_energy(r.total_gwh));
    row.push_back(format_percent(detail::delta_pct(r, base)));
    rows.push_back(std::move(row));
  }

  std::vector<std::vector<std::string>> footer;
  for (const auto &r : reports)
    footer.push_back({r.scenario, format_energy(r.yearly_volume_eb()),
                      format_energy(r.wh_per_gb)});

  return detail::render_grid(columns, rows) + "\n" +
         detail::render_grid({{"Scenario", true}, {"Volume (EB/yr)"}, {"Wh/GB"}}, footer);
}

/// Extra lines for --verbose: peak rates and equipment counts.
inline std::string render_details(const EnergyReport &r) {
  std::string out = r.scenario + "\n";
  for (const auto &[key, value] : r.details)
    out += "  " + key + " = " + detail::format_double(value) + "\n";
  return out;
}

/// Two scenarios side by side, segment by segment.
inline std::string render_compare_table(const EnergyReport &a, const EnergyReport &b) {
  std::vector<std::vector<std::string>> rows;
  const auto add = [&](const std::string &name, double x, double y) {
    const double pct = x != 0.0 ? 100.0 * (y - x) / x : 0.0;
    rows.push_back({name, format_energy(x), format_energy(y), format_energy(y - x),
                    x != 0.0 ? format_percent(pct) : "n/a"});
  };
  const auto sa = a.segments();
  const auto sb = b.segments();
  for (std::size_t i = 0; i < sa.size(); ++i)
    add(EnergyReport::kSegmentNames[i], sa[i]->energy_gwh, sb[i]->energy_gwh);
  add("total", a.total_gwh, b.total_gwh);
  add("wh_per_gb", a.wh_per_gb, b.wh_per_gb);
  return detail::render_grid(
      {{"Segment (GWh/yr)", true}, {a.scenario}, {b.scenario}, {"Delta"}, {"Delta %"}}, rows);
}

inline std::string render_sweep_table(const std::string &parameter,
                                      const std::vector<double> &values,
                                      const std::vector<EnergyReport> &points) {
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto &p = points[i];
    rows.push_back({detail::format_double(values[i]), format_energy(p.total_gwh),
                    p.delta ? format_energy(p.delta->delta_gwh) : "",
                    p.delta ? format_percent(p.delta->delta_pct) : "",
                    format_energy(p.wh_per_gb)});
  }
  return detail::render_grid(
      {{parameter, true}, {"Total GWh"}, {"Delta GWh"}, {"Delta %"}, {"Wh/GB"}}, rows);
}

// ---------------------------------------------------------------------------
// JSON

inline Json to_json(const EnergyReport &r) {
  Json segments = Json::object();
  const auto parts = r.segments();
  for (std::size_t i = 0; i < parts.size(); ++i)
    segments[EnergyReport::kSegmentNames[i]] =
        Json{{"power_w", parts[i]->power_w}, {"energy_gwh", parts[i]->energy_gwh}};
  Json details = Json::object();
  for (const auto &[key, value] : r.details)
    details[key] = value;
  Json delta = nullptr;
  if (r.delta)
    delta = Json{{"baseline", r.delta->baseline},
                 {"delta_gwh", r.delta->delta_gwh},
                 {"delta_pct", r.delta->delta_pct}};
  return Json{{"scenario", r.scenario},
              {"segments", std::move(segments)},
              {"total_power_w", r.total_power_w},
              {"total_gwh", r.total_gwh},
              {"yearly_volume_gb", r.yearly_volume_gb},
              {"yearly_volume_eb", r.yearly_volume_eb()},
              {"wh_per_gb", r.wh_per_gb},
              {"delta", std::move(delta)},
              {"details", std::move(details)},
              {"definition", to_json(r.definition)},
              {"inputs", to_json(r.inputs)}};
}

/// Inverse of to_json(EnergyReport); throws ConfigError on malformed input.
inline EnergyReport report_from_json(const Json &j, const std::string &path = "report") {
  EnergyReport r;
  std::vector<FieldIssue> issues;
  {
    detail::ObjectReader reader(j, path, issues);
    if (reader.valid()) {
      reader.text("scenario", r.scenario);
      reader.object("segments", [&](detail::ObjectReader &s) {
        const auto parts = r.segments();
        for (std::size_t i = 0; i < parts.size(); ++i)
          s.object(EnergyReport::kSegmentNames[i], [&](detail::ObjectReader &seg) {
            seg.number("power_w", parts[i]->power_w);
            seg.number("energy_gwh", parts[i]->energy_gwh);
          });
      });
      reader.number("total_power_w", r.total_power_w);
      reader.number("total_gwh", r.total_gwh);
      reader.number("yearly_volume_gb", r.yearly_volume_gb);
      double ignored = 0;
      reader.number("yearly_volume_eb", ignored); // derived
      reader.number("wh_per_gb", r.wh_per_gb);
      detail::read_optional(reader, "delta", r.delta, [](detail::ObjectReader &d, Delta &out) {
        d.text("baseline", out.baseline);
        d.number("delta_gwh", out.delta_gwh);
        d.number("delta_pct", out.delta_pct);
      });
      if (const Json *details = reader.get("details")) {
        if (!details->is_object())
          reader.issue(reader.child("details"), "expected an object");
        else
          for (const auto &[key, value] : details->items()) {
            if (value.is_number())
              r.details[key] = value.get<double>();
            else
              reader.issue(reader.child("details." + key), "expected a number");
          }
      }
      reader.object("definition", [&](detail::ObjectReader &d) {
        detail::read_scenario(d, r.definition);
      });
      reader.object("inputs", [&](detail::ObjectReader &m) { detail::read_model(m, r.inputs); });
    }
  }
  if (!issues.empty())
    throw ConfigError(std::move(issues));
  return r;
}

/// Report document: every scenario plus deltas against the named baseline.
inline Json report_document(const std::vector<EnergyReport> &reports,
                            const std::string &baseline) {
  const EnergyReport &base = detail::find_report(reports, baseline);
  Json list = Json::array();
  for (EnergyReport r : reports) {
    const double delta = r.total_gwh - base.total_gwh;
    r.delta = Delta{base.scenario, delta, detail::delta_pct(r, base)};
    list.push_back(to_json(r));
  }
  return Json{{"schema", kReportSchema}, {"baseline", baseline}, {"reports", std::move(list)}};
}

/// Parses a report document back into reports; the baseline name goes to
/// `baseline` when given.
inline std::vector<EnergyReport> parse_report_document(const Json &doc,
                                                       std::string *baseline = nullptr) {
  if (!doc.is_object() || doc.value("schema", "") != kReportSchema)
    throw ConfigError("schema", std::string("expected ") + kReportSchema);
  if (!doc.contains("reports") || !doc["reports"].is_array())
    throw ConfigError("reports", "expected a list of reports");
  if (baseline)
    *baseline = doc.value("baseline", "");
  std::vector<EnergyReport> reports;
  for (std::size_t i = 0; i < doc["reports"].size(); ++i)
    reports.push_back(
        report_from_json(doc["reports"][i], "reports[" + std::to_string(i) + "]"));
  return reports;
}

inline std::string dump(const Json &j) { return j.dump(2) + "\n"; }

inline std::string render_json(const std::vector<EnergyReport> &reports,
                               const std::string &baseline) {
  return dump(report_document(reports, baseline));
}

inline std::string render(const std::vector<EnergyReport> &reports, const std::string &baseline,
                          OutputFormat format) {
  return format == OutputFormat::json ? render_json(reports, baseline)
                                      : render_table(reports, baseline);
}

inline Json compare_document(const EnergyReport &a, const EnergyReport &b) {
  Json deltas = Json::object();
  const auto add = [&](const std::string &name, double x, double y) {
    deltas[name] = Json{{"a_gwh", x},
                        {"b_gwh", y},
                        {"delta_gwh", y - x},
                        {"delta_pct", x != 0.0 ? Json(100.0 * (y - x) / x) : Json(nullptr)}};
  };
  const auto sa = a.segments();
  const auto sb = b.segments();
  for (std::size_t i = 0; i < sa.size(); ++i)
    add(EnergyReport::kSegmentNames[i], sa[i]->energy_gwh, sb[i]->energy_gwh);
  add("total", a.total_gwh, b.total_gwh);
  return Json{{"schema", kCompareSchema},
              {"a", to_json(a)},
              {"b", to_json(b)},
              {"deltas", std::move(deltas)}};
}

inline Json sweep_document(const std::string &scenario, const std::string &parameter,
                           const std::vector<double> &values,
                           const std::vector<EnergyReport> &points,
                           const std::string &baseline) {
  Json series = Json::array();
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto &p = points[i];
    series.push_back(Json{{"value", values[i]},
                          {"total_gwh", p.total_gwh},
                          {"delta_gwh", p.delta ? p.delta->delta_gwh : 0.0},
                          {"delta_pct", p.delta ? p.delta->delta_pct : 0.0},
                          {"wh_per_gb", p.wh_per_gb}});
  }
  return Json{{"schema", kSweepSchema},
              {"scenario", scenario},
              {"parameter", parameter},
              {"baseline", baseline},
              {"points", std::move(series)}};
}

} // namespace netdim

#endif // NETDIM_REPORT_HPP
