// netdim: evaluate, compare and sweep network energy scenarios, or serve the
// evaluation API over HTTP.
//
// Exit status: 0 success, 1 usage, 2 invalid configuration or unknown
// scenario, 3 infeasible model, 4 other model error.

#include <algorithm>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "netdim/netdim.hpp"
#include "netdim/server.hpp"

namespace {

using namespace netdim;

constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitModel = 4;

struct Common {
  std::string config_path;
  std::string format;
  std::string dynamic_power;
  bool verbose = false;
};

void add_common(CLI::App &cmd, Common &common, bool with_format = true) {
  cmd.add_option("--config", common.config_path, "YAML configuration (defaults are built in)");
  if (with_format)
    cmd.add_option("--format", common.format, "table or json")
        ->check(CLI::IsMember({"table", "json"}));
  cmd.add_option("--dynamic-power", common.dynamic_power, "0.1 Wh/GB traffic add-on")
      ->check(CLI::IsMember({"on", "off"}));
}

RunConfig load(const Common &common) {
  RunConfig config = common.config_path.empty() ? RunConfig{}
                                                : load_config_file(common.config_path);
  if (common.format == "json")
    config.output.format = OutputFormat::json;
  else if (common.format == "table")
    config.output.format = OutputFormat::table;
  if (!common.dynamic_power.empty())
    config.model.dynamic.enabled = common.dynamic_power == "on";
  if (common.verbose)
    config.output.verbose = true;
  return config;
}

void print_issues(const ConfigError &e) {
  std::cerr << "error: invalid configuration\n";
  for (const auto &issue : e.issues())
    std::cerr << "  " << (issue.field.empty() ? "" : issue.field + ": ") << issue.message
              << "\n";
}

template <class Fn> int guarded(Fn &&fn) {
  try {
    return fn();
  } catch (const ConfigError &e) {
    print_issues(e);
    return kExitConfig;
  } catch (const InfeasibleError &e) {
    std::cerr << "error: infeasible (" << e.constraint() << "): " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitModel;
  }
}

std::string verbose_block(const RunConfig &config, const EnergyReport &report) {
  std::string out = render_details(report);
  ModelInputs literal = config.model;
  literal.topology.literal_2l = !literal.topology.literal_2l;
  const EnergyReport other = evaluate(literal, report.definition);
  const bool tree8 = !config.model.topology.literal_2l;
  const double n8 = tree8 ? report.national.energy_gwh : other.national.energy_gwh;
  const double n2 = tree8 ? other.national.energy_gwh : report.national.energy_gwh;
  out += "  national.total_gwh[8^l tree] = " + format_energy(n8) + "\n";
  out += "  national.total_gwh[literal 2^l] = " + format_energy(n2) + "\n";
  return out;
}

int run_command(const Common &common, const std::vector<std::string> &names, bool all) {
  const RunConfig config = load(common);
  std::vector<const Scenario *> selected;
  if (!names.empty()) {
    for (const auto &name : names)
      selected.push_back(&config.scenario(name));
  } else {
    for (const auto &s : config.scenarios)
      if (all || !s.cache)
        selected.push_back(&s);
  }
  std::vector<EnergyReport> reports;
  for (const Scenario *s : selected)
    reports.push_back(evaluate(config.model, *s));

  // deltas need the baseline row; add it when it was not asked for
  std::string baseline = config.baseline;
  const bool has_baseline = std::any_of(reports.begin(), reports.end(),
                                        [&](const auto &r) { return r.scenario == baseline; });
  if (!has_baseline)
    reports.insert(reports.begin(), evaluate(config.model, config.scenario(baseline)));

  std::cout << render(reports, baseline, config.output.format);
  if (config.output.verbose && config.output.format == OutputFormat::table) {
    std::cout << "\n";
    for (const auto &r : reports)
      std::cout << verbose_block(config, r);
  }
  return 0;
}

int compare_command(const Common &common, const std::string &a, const std::string &b) {
  const RunConfig config = load(common);
  const Scenario &sa = config.scenario(a);
  const Scenario &sb = config.scenario(b);
  const EnergyReport ra = evaluate(config.model, sa);
  const EnergyReport rb = evaluate(config.model, sb);
  if (config.output.format == OutputFormat::json)
    std::cout << dump(compare_document(ra, rb));
  else
    std::cout << render_compare_table(ra, rb);
  return 0;
}

int sweep_command(const Common &common, const std::string &scenario,
                  const std::string &parameter, const std::vector<double> &values) {
  RunConfig config = load(common);
  if (common.format.empty())
    config.output.format = OutputFormat::json; // a series is meant for tools
  const Scenario &tmpl = config.scenario(scenario);
  const EnergyReport base = evaluate(config.model, config.scenario(config.baseline));
  const auto points = sweep(config.model, tmpl, parameter, values, base);
  if (config.output.format == OutputFormat::json)
    std::cout << dump(sweep_document(tmpl.name, parameter, values, points, config.baseline));
  else
    std::cout << render_sweep_table(parameter, values, points);
  return 0;
}

int serve_command(const Common &common, const std::string &bind) {
  const EvaluationService service(load(common));
  const auto [host, port] = parse_bind(bind);
  httplib::Server server;
  mount(server, service);
  if (!server.bind_to_port(host, port)) {
    std::cerr << "error: cannot bind " << host << ":" << port << "\n";
    return 1;
  }
  std::cerr << "netdim serving on http://" << host << ":" << port << "\n";
  server.listen_after_bind();
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Energy dimensioning of fixed-access video delivery networks"};
  app.require_subcommand(1);

  Common common;
  std::vector<std::string> scenarios;
  bool all = false;
  auto *run = app.add_subcommand("run", "Evaluate scenarios (default: the reference suite)");
  add_common(*run, common);
  run->add_option("--scenario", scenarios, "Scenario name; repeatable");
  run->add_flag("--all", all, "Include the caching variants");
  run->add_flag("--verbose,-v", common.verbose, "Peak rates and equipment counts");

  std::string a, b;
  auto *compare = app.add_subcommand("compare", "Two scenarios side by side");
  add_common(*compare, common);
  compare->add_option("a", a, "First scenario")->required();
  compare->add_option("b", b, "Second scenario")->required();

  std::string tmpl = "HD", parameter;
  std::vector<double> values;
  auto *sweep_cmd = app.add_subcommand("sweep", "Vary one parameter of a scenario");
  add_common(*sweep_cmd, common);
  sweep_cmd->add_option("--scenario", tmpl, "Template scenario")->capture_default_str();
  sweep_cmd->add_option("--parameter", parameter, "Parameter name")->required();
  sweep_cmd->add_option("--values", values, "Comma-separated values")->delimiter(',');

  std::string bind = "127.0.0.1:8080";
  auto *serve = app.add_subcommand("serve", "HTTP evaluation API");
  add_common(*serve, common, false);
  serve->add_option("--bind", bind, "host:port")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  return guarded([&] {
    if (*run)
      return run_command(common, scenarios, all);
    if (*compare)
      return compare_command(common, a, b);
    if (*sweep_cmd)
      return sweep_command(common, tmpl, parameter, values);
    return serve_command(common, bind);
  });
}
