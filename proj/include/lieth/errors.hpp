#pragma once

#include <stdexcept>
#include <string>

namespace lieth {

/// Bad arguments, malformed input, or objects from mismatched parents.
class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

/// Requested configuration outside the supported range (series, rank, group id).
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// Numerical failure; message carries diagnostics (condition numbers, residuals).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Gauge transformation evaluated where 1 + gamma# pi# is not invertible.
class GaugeError : public std::runtime_error {
 public:
  explicit GaugeError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lieth
