#pragma once

#include <stdexcept>
#include <string>

namespace ambsc {

/// Malformed configuration text. Carries the 1-based line number when known.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// A parsed scenario violates one of its invariants.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A device whose harvester can never cover its circuit power.
class InfeasibleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace ambsc
