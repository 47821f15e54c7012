#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "sharp/function_model.hpp"
#include "sharp/hypersingular.hpp"
#include "sharp/modulus.hpp"
#include "sharp/quadrature.hpp"
#include "sharp/space.hpp"
#include "sharp/theorems.hpp"

namespace sharp {

/// f(x) = sign * max_i (c_i - slope * omega(rho(x, p_i)))_+, or the constant
/// `constant` when slope = 0. Heights are drawn as c_i = slope * omega(r_i) * u_i
/// with u_i in (0, 1], so cone i vanishes outside B(p_i, r_i) and
/// ||f||_{H^omega} <= slope.
struct ConeFunctionSpec {
  std::vector<Point> centers;
  std::vector<double> heights;
  std::vector<double> radii;
  double slope = 0.0;
  double sign = 1.0;
  double constant = 0.0;

  bool is_constant() const noexcept { return slope == 0.0; }
  double sup_norm() const;
  /// Radius R with f == 0 outside B_R (not meaningful for constants).
  double support_radius(const Space& space) const;
  double operator()(const Space& space, const Modulus& omega, const Point& x) const;
  ConeFunctionSpec scaled(double factor) const;
  nlohmann::ordered_json to_json() const;
};

/// The cone function with its certified metadata: H^omega bound = slope, sup
/// norm, support, upper gradient slope/2.
FunctionModel cone_model(const ConeFunctionSpec& spec, const Space& space, const Modulus& omega);

struct SuiteOptions {
  bool allow_constants = true;  // lambda = 0 trials
  double center_range = 3.0;
  double min_radius = 0.5;
  double max_radius = 3.5;
  int max_cones = 3;
  /// Hypersingular trials; when unset, t^{-d-beta} with beta = (exponent of omega at 0)/2.
  std::optional<Kernel> kernel;
  QuadratureSpec quadrature = [] {
    QuadratureSpec q;
    q.abs_tol = 1e-9;
    q.rel_tol = 1e-9;
    return q;
  }();
};

ConeFunctionSpec random_cone_spec(TheoremId id, const Space& space, const Modulus& omega, std::uint64_t seed,
                                  std::uint64_t trial, const SuiteOptions& options = {});

struct TrialResult {
  double h = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  double tolerance = 0.0;
  bool violated() const noexcept { return gap < -tolerance; }
};

/// One inequality instance on a cone function. Lemma 1 through the charge form
/// run on a lattice (sums exact up to rounding); the hypersingular and mixed
/// forms run on the continuum with d = 1 for the mixed ones.
TrialResult evaluate_trial(TheoremId id, const Space& space, const Modulus& omega, const ConeFunctionSpec& spec,
                           double h, const SuiteOptions& options = {});

struct SuiteReport {
  std::string theorem_id;
  std::size_t trials = 0;
  double min_gap = 0.0;
  std::size_t violations = 0;
  nlohmann::ordered_json worst_case_spec;
  std::uint64_t seed = 0;

  nlohmann::ordered_json to_json() const;
};

SuiteReport random_suite(TheoremId id, const Space& space, const Modulus& omega, std::span<const double> h_values,
                         std::size_t trials, std::uint64_t seed, const SuiteOptions& options = {});

struct CrossCheckParams {
  Space space = Space::continuum(1, 0);
  Modulus omega = Modulus::power(1.0);
  double h = 1.0;
  std::optional<Kernel> kernel;
  std::optional<Point> x;  // steklov_average evaluation point; theta when unset
};

struct AgreementReport {
  std::string op_id;
  double deterministic = 0.0;
  double monte_carlo = 0.0;
  double standard_error = 0.0;
  bool agree = false;

  nlohmann::ordered_json to_json() const;
};

/// Operations with both paths: ball_integral, radial_table, lattice_ball_integral,
/// kernel_ball_mass, kernel_tail_mass, steklov_average, split_point. Agreement
/// means |deterministic - MC| <= 4 standard errors.
AgreementReport mc_cross_check(const std::string& op_id, const CrossCheckParams& params, std::size_t samples,
                               std::uint64_t seed);

const std::vector<std::string>& cross_check_ops();

}  // namespace sharp
