#ifndef NETDIM_SERVER_HPP
#define NETDIM_SERVER_HPP

// HTTP binding of EvaluationService. Needs cpp-httplib and a threads library.

#include <charconv>
#include <string>
#include <utility>

#include <httplib.h>

#include "netdim/service.hpp"

namespace netdim {

inline void mount(httplib::Server &server, const EvaluationService &service) {
  const auto reply = [](httplib::Response &res, const Response &r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  server.Get("/health", [&service, reply](const httplib::Request &, httplib::Response &res) {
    reply(res, service.health());
  });
  server.Get("/defaults", [&service, reply](const httplib::Request &, httplib::Response &res) {
    reply(res, service.defaults());
  });
  server.Post("/evaluate",
              [&service, reply](const httplib::Request &req, httplib::Response &res) {
                reply(res, service.evaluate(req.body));
              });
  server.Post("/compare",
              [&service, reply](const httplib::Request &req, httplib::Response &res) {
                reply(res, service.compare(req.body));
              });
  // the browser front end is served from another origin
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
  server.Options(R"(/.*)", [](const httplib::Request &, httplib::Response &res) {
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });
}

/// Splits "host:port"; a bare port binds to 127.0.0.1.
inline std::pair<std::string, int> parse_bind(const std::string &bind) {
  const auto colon = bind.rfind(':');
  std::string host = colon == std::string::npos ? "127.0.0.1" : bind.substr(0, colon);
  const std::string port = colon == std::string::npos ? bind : bind.substr(colon + 1);
  int value = -1;
  const auto [p, ec] = std::from_chars(port.data(), port.data() + port.size(), value);
  if (ec != std::errc() || p != port.data() + port.size() || value < 0 || value > 65535)
    throw ConfigError("bind", "expected host:port, got '" + bind + "'");
  if (host.empty())
    host = "127.0.0.1";
  return {host, value};
}

} // namespace netdim

#endif // NETDIM_SERVER_HPP
