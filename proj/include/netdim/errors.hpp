#ifndef NETDIM_ERRORS_HPP
#define NETDIM_ERRORS_HPP

#include <array>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace netdim {

/// Base class of every error raised by the model.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A parameter lies outside its mathematical domain (probability > 1, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

/// Exact computation refused because the input exceeds an implementation cap.
class CapacityError : public Error {
public:
  CapacityError(const std::string &what, std::size_t requested, std::size_t cap)
      : Error(what), requested_(requested), cap_(cap) {}

  std::size_t requested() const noexcept { return requested_; }
  std::size_t cap() const noexcept { return cap_; }

private:
  std::size_t requested_;
  std::size_t cap_;
};

/// The three-point interpolation found no exponent in its bracket.
class FitError : public Error {
public:
  FitError(const std::string &what, std::array<double, 3> anchor_values)
      : Error(what), anchor_values_(anchor_values) {}

  const std::array<double, 3> &anchor_values() const noexcept {
    return anchor_values_;
  }

private:
  std::array<double, 3> anchor_values_;
};

/// A dimensioning constraint cannot be met by any configuration.
class InfeasibleError : public Error {
public:
  InfeasibleError(std::string constraint, const std::string &what)
      : Error(what), constraint_(std::move(constraint)) {}

  const std::string &constraint() const noexcept { return constraint_; }

private:
  std::string constraint_;
};

/// One field-level configuration problem.
struct FieldIssue {
  std::string field;
  std::string message;
};

/// Configuration failed to parse or validate; carries every offending field.
class ConfigError : public Error {
public:
  explicit ConfigError(std::vector<FieldIssue> issues)
      : Error(summarize(issues)), issues_(std::move(issues)) {}

  ConfigError(std::string field, std::string message)
      : ConfigError(std::vector<FieldIssue>{{std::move(field), std::move(message)}}) {}

  const std::vector<FieldIssue> &issues() const noexcept { return issues_; }

private:
  static std::string summarize(const std::vector<FieldIssue> &issues) {
    std::string out;
    for (const auto &issue : issues) {
      if (!out.empty())
        out += "; ";
      out += issue.field.empty() ? issue.message : issue.field + ": " + issue.message;
    }
    return out.empty() ? std::string("invalid configuration") : out;
  }

  std::vector<FieldIssue> issues_;
};

/// Rendering was asked for something the report list cannot provide.
class RenderError : public Error {
public:
  using Error::Error;
};

} // namespace netdim

#endif // NETDIM_ERRORS_HPP
