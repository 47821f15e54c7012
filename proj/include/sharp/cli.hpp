#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"
#include "sharp/config.hpp"

namespace sharp {

/// Exit codes of sharp-ineq.
enum ExitCode : int { kExitOk = 0, kExitViolation = 1, kExitConfig = 2, kExitNumeric = 3 };

/// Flag values that replace the corresponding config fields.
struct Overrides {
  std::optional<std::uint64_t> seed;  // quadrature, suite and cross-check seeds
  std::optional<double> tol;          // quadrature abs_tol and rel_tol
  std::optional<std::string> out;
  std::optional<std::string> format;
};

struct CommandResult {
  int exit_code = kExitOk;
  std::string output;   // the rendered tables
  std::string message;  // diagnostics for stderr
};

void apply_overrides(ExperimentConfig& config, const Overrides& overrides);

/// Runs constant, verify, stechkin or oracle. Throws ConfigError,
/// std::invalid_argument or NumericFailure; the exit code is 0 or 1.
CommandResult execute(const std::string& command, const ExperimentConfig& config);

/// Parses the config, applies overrides and runs the command, mapping
/// exceptions onto exit codes 2 and 3. Does not write files.
CommandResult run_command(const std::string& command, const nlohmann::json& config, const Overrides& overrides = {});

/// Entry point of the sharp-ineq binary.
int run_cli(int argc, char** argv);

}  // namespace sharp
