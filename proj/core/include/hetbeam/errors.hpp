#pragma once

#include <stdexcept>
#include <string>

namespace hetbeam {

/// A precondition on an argument or configuration value does not hold.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical integration could not meet its tolerance within the subdivision cap.
class QuadratureFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A derivative was requested at (or within one step of) a point where the
/// aligned interval switches branch, so the one-sided derivatives differ.
class BoundaryNondifferentiable : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Configuration text could not be parsed, or a parsed value violates an
/// invariant. `path()` names the offending key (e.g. "link.bandwidth_hz").
class ConfigError : public std::runtime_error {
 public:
  enum class Kind { parse, validation };

  ConfigError(Kind kind, std::string path, const std::string& message, int line = 0)
      : std::runtime_error(message), kind_(kind), path_(std::move(path)), line_(line) {}

  Kind kind() const noexcept { return kind_; }
  const std::string& path() const noexcept { return path_; }
  int line() const noexcept { return line_; }

 private:
  Kind kind_;
  std::string path_;
  int line_;
};

/// A figure was requested before the analysis that feeds it has run.
class MissingAnalysis : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace hetbeam
