#pragma once

#include <stdexcept>
#include <string>

namespace sharp {

// Precondition violations throw std::invalid_argument. The two types below
// separate numeric breakdowns and malformed experiment configs so the CLI can
// map them onto distinct exit codes.

class NumericFailure : public std::runtime_error {
 public:
  explicit NumericFailure(const std::string& what) : std::runtime_error(what) {}
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sharp
