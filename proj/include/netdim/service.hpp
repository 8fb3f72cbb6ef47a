#ifndef NETDIM_SERVICE_HPP
#define NETDIM_SERVICE_HPP

// Request handlers behind the HTTP API. They take the raw body and return a
// status plus a JSON document, so they can be exercised without a socket.
//
//   GET  /health    liveness
//   GET  /defaults  the full default configuration and sweepable parameters
//   POST /evaluate  one scenario, with optional overrides
//   POST /compare   two scenarios under shared overrides
//
// Bad input maps to 400, infeasible models to 422.

#include <algorithm>
#include <string>
#include <string_view>
#include <utility>

#include "netdim/config.hpp"
#include "netdim/errors.hpp"
#include "netdim/report.hpp"
#include "netdim/scenario.hpp"

namespace netdim {

struct Response {
  int status = 200;
  Json body;
};

class EvaluationService {
public:
  explicit EvaluationService(RunConfig defaults = {}) : defaults_(std::move(defaults)) {}

  const RunConfig &config() const { return defaults_; }

  Response health() const { return {200, Json{{"status", "ok"}}}; }

  Response defaults() const {
    Json body = to_json(defaults_);
    body["parameters"] = sweep_parameters();
    return {200, std::move(body)};
  }

  /// Body: {"scenario": name | {...}, "config": {...}, "dynamic_power": bool,
  ///        "baseline": name, <parameter>: value, ...}; every key optional.
  Response evaluate(std::string_view body) const {
    return guarded([&] {
      const Json request = parse_body(body);
      const Prepared p = prepare(request, defaults_, "");
      return Response{200, to_json(run(p))};
    });
  }

  /// Body: {"a": name | request, "b": name | request, "config": {...},
  ///        "dynamic_power": bool}. Shared keys apply to both sides.
  Response compare(std::string_view body) const {
    return guarded([&] {
      const Json request = parse_body(body);
      std::vector<FieldIssue> issues;
      for (const auto &[key, value] : request.items())
        if (key != "a" && key != "b" && key != "config" && key != "dynamic_power")
          issues.push_back({key, "unknown field"});
      for (const char *side : {"a", "b"})
        if (!request.contains(side))
          issues.push_back({side, "is required"});
      if (!issues.empty())
        throw ConfigError(std::move(issues));

      Json shared = Json::object();
      for (const char *key : {"config", "dynamic_power"})
        if (request.contains(key))
          shared[key] = request[key];
      RunConfig base = defaults_;
      apply_shared(shared, base, "");

      const auto side = [&](const char *name) {
        const Json &spec = request[name];
        Json sub = spec.is_string() ? Json{{"scenario", spec}} : spec;
        return run(prepare(sub, base, std::string(name) + "."));
      };
      const EnergyReport a = side("a");
      const EnergyReport b = side("b");
      return Response{200, compare_document(a, b)};
    });
  }

private:
  struct Prepared {
    ModelInputs model;
    Scenario scenario;
    Scenario baseline;
  };

  static Json parse_body(std::string_view body) {
    if (body.find_first_not_of(" \t\r\n") == std::string_view::npos)
      return Json::object();
    Json request;
    try {
      request = Json::parse(body);
    } catch (const Json::parse_error &e) {
      throw ConfigError("(body)", std::string("malformed JSON: ") + e.what());
    }
    if (!request.is_object())
      throw ConfigError("(body)", "expected a JSON object");
    return request;
  }

  static bool is_parameter(const std::string &key) {
    const auto &names = sweep_parameters();
    return key == "r_v" || key == "r_b" ||
           std::find(names.begin(), names.end(), key) != names.end();
  }

  // config and dynamic_power
  static void apply_shared(const Json &request, RunConfig &base, const std::string &path) {
    std::vector<FieldIssue> issues;
    if (request.contains("config"))
      apply_model(request["config"], base.model, issues, path + "config");
    if (request.contains("dynamic_power")) {
      if (request["dynamic_power"].is_boolean())
        base.model.dynamic.enabled = request["dynamic_power"].get<bool>();
      else
        issues.push_back({path + "dynamic_power", "expected true or false"});
    }
    if (issues.empty())
      issues = validate(base.model);
    if (!issues.empty())
      throw ConfigError(std::move(issues));
  }

  static Prepared prepare(const Json &request, RunConfig base, const std::string &path) {
    if (!request.is_object())
      throw ConfigError(path.empty() ? "(body)" : path.substr(0, path.size() - 1),
                        "expected a scenario name or an object");
    std::vector<FieldIssue> issues;
    for (const auto &[key, value] : request.items())
      if (key != "scenario" && key != "config" && key != "dynamic_power" &&
          key != "baseline" && !is_parameter(key))
        issues.push_back({path + key, "unknown field"});
    if (!issues.empty())
      throw ConfigError(std::move(issues));
    apply_shared(request, base, path);

    Prepared p;
    p.model = base.model;

    std::string baseline_name = base.baseline;
    if (request.contains("baseline")) {
      if (!request["baseline"].is_string())
        throw ConfigError(path + "baseline", "expected a scenario name");
      baseline_name = request["baseline"].get<std::string>();
    }
    p.baseline = named(base, baseline_name, path + "baseline");

    const Json scenario = request.value("scenario", Json(base.baseline));
    if (scenario.is_string()) {
      p.scenario = named(base, scenario.get<std::string>(), path + "scenario");
    } else if (scenario.is_object()) {
      Json overrides = scenario;
      if (overrides.contains("base")) {
        if (!overrides["base"].is_string())
          throw ConfigError(path + "scenario.base", "expected a scenario name");
        p.scenario = named(base, overrides["base"].get<std::string>(), path + "scenario.base");
        overrides.erase("base");
      } else if (overrides.contains("name") && overrides["name"].is_string() &&
                 base.find(overrides["name"].get<std::string>())) {
        p.scenario = *base.find(overrides["name"].get<std::string>());
      } else {
        p.scenario.name = "custom";
      }
      apply_scenario(overrides, p.scenario, path + "scenario");
    } else {
      throw ConfigError(path + "scenario", "expected a scenario name or an object");
    }

    for (const auto &[key, value] : request.items()) {
      if (!is_parameter(key))
        continue;
      if (!value.is_number())
        throw ConfigError(path + key, "expected a number");
      set_parameter(p.scenario, key, value.get<double>());
    }
    auto problems = validate(p.scenario, path + "scenario.");
    if (!problems.empty())
      throw ConfigError(std::move(problems));
    return p;
  }

  static Scenario named(const RunConfig &base, const std::string &name,
                        const std::string &field) {
    try {
      return base.scenario(name);
    } catch (const ConfigError &e) {
      throw ConfigError(field, e.issues().front().message);
    }
  }

  static EnergyReport run(const Prepared &p) {
    const EnergyReport base = netdim::evaluate(p.model, p.baseline);
    std::vector<EnergyReport> one{netdim::evaluate(p.model, p.scenario)};
    attach_deltas(one, base);
    return one.front();
  }

  template <class Fn> static Response guarded(Fn &&fn) {
    try {
      return fn();
    } catch (const ConfigError &e) {
      Json issues = Json::array();
      for (const auto &issue : e.issues())
        issues.push_back(Json{{"field", issue.field}, {"message", issue.message}});
      return {400, Json{{"error", "invalid_request"},
                        {"message", e.what()},
                        {"issues", std::move(issues)}}};
    } catch (const DomainError &e) {
      return {400, Json{{"error", "invalid_request"}, {"message", e.what()}}};
    } catch (const InfeasibleError &e) {
      return {422, Json{{"error", "infeasible"},
                        {"constraint", e.constraint()},
                        {"message", e.what()}}};
    } catch (const Error &e) {
      return {422, Json{{"error", "model_error"}, {"message", e.what()}}};
    }
  }

  RunConfig defaults_;
};

} // namespace netdim

#endif // NETDIM_SERVICE_HPP
