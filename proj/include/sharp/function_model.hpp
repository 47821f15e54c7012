#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sharp/modulus.hpp"
#include "sharp/space.hpp"

namespace sharp {

/// phi(t) = inner_const + inner_coeff * shape(t) for t < radius, outer_value
/// for t >= radius. Every extremal in this library is phi(rho(x, theta)) for
/// one of these, which is what lets ball integrals centred at theta reduce to
/// closed forms in mu(B_t) and the moment of `shape`.
struct RadialProfile {
  Modulus shape = Modulus::power(1.0);
  double inner_const = 0.0;
  double inner_coeff = 0.0;
  double radius = std::numeric_limits<double>::infinity();
  double outer_value = 0.0;

  double operator()(double t) const { return t < radius ? inner_const + inner_coeff * shape(t) : outer_value; }
};

struct SeminormCertificate {
  double h;
  double value;
};

/// A real function on a space together with whatever is known about it in
/// closed form. Certified values are proven upper bounds (for the extremals,
/// exact values); sampled estimates in the calculus layer only cross-check them.
struct FunctionModel {
  std::function<double(const Point&)> evaluator;
  std::string label;

  std::optional<double> holder_bound;          // ||f||_{H^omega}
  std::optional<double> sup_norm;              // ||f||_B
  std::optional<SeminormCertificate> seminorm;  // value of the local seminorm at a stated h
  std::optional<double> l1_norm;
  std::optional<double> upper_gradient_bound;  // ||G_f||_inf for an admissible upper gradient
  std::optional<double> support_radius;        // f == far_value outside B_R
  double far_value = 0.0;
  std::optional<double> operator_norm;         // set on images S_h f: the norm of S_h

  std::optional<RadialProfile> radial;
  std::shared_ptr<const FunctionModel> mixed_derivative;

  /// Coordinate values at which f may have kinks; used as quadrature breakpoints.
  std::vector<double> kinks;

  double operator()(const Point& x) const { return evaluator(x); }

  bool compactly_supported() const noexcept { return support_radius.has_value() && far_value == 0.0; }

  static FunctionModel constant(double c);
  static FunctionModel from_profile(const Space& space, RadialProfile profile, std::string label);
};

}  // namespace sharp
