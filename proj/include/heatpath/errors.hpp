#pragma once

#include <stdexcept>
#include <string>

namespace heatpath {

/// Malformed or inconsistent input data (files, config, tables). Carries a
/// human-readable location such as "stop_times.txt:14" when available.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
  InputError(const std::string& where, const std::string& what)
      : std::runtime_error(where + ": " + what) {}
};

/// Request outside the data's domain (time outside the weather series,
/// unsupported demographic/mode pair, ...).
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace heatpath
