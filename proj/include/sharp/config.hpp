#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sharp/function_model.hpp"
#include "sharp/hypersingular.hpp"
#include "sharp/modulus.hpp"
#include "sharp/oracle.hpp"
#include "sharp/quadrature.hpp"
#include "sharp/space.hpp"
#include "sharp/theorems.hpp"

namespace sharp {

// Every parser below throws ConfigError with the offending key in the message.

Space parse_space(const nlohmann::json& j);
Modulus parse_modulus(const nlohmann::json& j);
Kernel parse_kernel(const nlohmann::json& j);
QuadratureSpec parse_quadrature(const nlohmann::json& j);

/// {"family": "f_eh"|"f_omega"|"f_e_omega"|"g_eh"|"G_eh", ...}. f_omega takes
/// optional "c" and "sign"; the others take "h". g_eh and G_eh ignore the
/// space kind and use its dimension.
FunctionModel parse_extremal(const nlohmann::json& j, const Space& space, const Modulus& omega);

struct SuiteSettings {
  std::size_t trials = 1000;
  std::vector<std::uint64_t> seeds{1};
};

struct CrossCheckSpec {
  std::string op;
  CrossCheckParams params;
  std::size_t samples = 200000;
  std::uint64_t seed = 1;
};

/// One experiment file. "space" and "modulus" may be single descriptors or
/// arrays; runs iterate spaces, then moduli, then h values in file order.
struct ExperimentConfig {
  std::vector<Space> spaces;
  std::vector<Modulus> moduli;
  std::vector<double> h_values;
  std::vector<double> N_values;
  std::vector<TheoremId> theorems;
  Kernel kernel = Kernel::power_law(0.5);
  bool kernel_given = false;
  double split_radius = 1.0;
  QuadratureSpec quadrature;
  std::optional<SuiteSettings> suite;
  std::vector<CrossCheckSpec> cross_checks;
  std::optional<std::string> out;
  std::string format = "csv";
};

ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);

}  // namespace sharp
