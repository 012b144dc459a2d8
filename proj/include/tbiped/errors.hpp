#pragma once

#include <stdexcept>
#include <string>

namespace tbiped {

/// Foot target outside the leg workspace.
class UnreachableTarget : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A simulated quantity became NaN or infinite.
class NumericalDivergence : public std::runtime_error {
 public:
  explicit NumericalDivergence(const std::string& what)
      : std::runtime_error(what), time_(-1.0) {}
  NumericalDivergence(const std::string& what, double time)
      : std::runtime_error(what + " at t=" + std::to_string(time)), time_(time) {}

  /// Simulation time of the failure, or -1 when not tied to a timeline.
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// Malformed scenario config text.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, std::string key, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) +
                           (key.empty() ? std::string{} : " (" + key + ")") + ": " + message),
        line_(line),
        key_(std::move(key)) {}

  int line() const noexcept { return line_; }
  const std::string& key() const noexcept { return key_; }

 private:
  int line_;
  std::string key_;
};

/// A parameter set violates one of its invariants; the message names it.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tbiped
