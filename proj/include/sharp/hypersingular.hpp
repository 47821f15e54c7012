#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sharp/function_model.hpp"
#include "sharp/modulus.hpp"
#include "sharp/quadrature.hpp"
#include "sharp/space.hpp"

namespace sharp {

/// Radial kernel P >= 0 for hypersingular operators.
///
/// PowerLaw: P(t) = t^{-d-beta} with beta > 0, d taken from the space.
/// Table: piecewise linear through points starting at t = 0, zero after the
/// last breakpoint, so its tail mass is finite by construction.
class Kernel {
 public:
  enum class Kind { PowerLaw, Table };

  static Kernel power_law(double beta);
  static Kernel table(std::vector<std::pair<double, double>> points);

  Kind kind() const noexcept { return kind_; }
  double beta() const noexcept { return beta_; }
  const std::vector<std::pair<double, double>>& points() const noexcept { return points_; }
  /// Last breakpoint of a table kernel; +inf for a power law.
  double support_radius() const noexcept;

  double operator()(double t, int d) const;

  std::string label() const;

 private:
  Kernel() = default;
  Kind kind_ = Kind::PowerLaw;
  double beta_ = 1.0;
  std::vector<std::pair<double, double>> points_;
};

/// A(h) = int_{B_h} omega(rho) P(rho) dmu. Continuum only.
Estimate kernel_ball_mass(const Space& space, const Modulus& omega, const Kernel& P, double h,
                          const QuadratureSpec& spec);
/// T(h) = int_{X \ B_h} P(rho) dmu. Continuum only.
Estimate kernel_tail_mass(const Space& space, const Kernel& P, double h, const QuadratureSpec& spec);

/// ||Dbar_{P,h}|| on bounded continuous functions: 2 T(h).
double truncated_operator_norm(const Space& space, const Kernel& P, double h, const QuadratureSpec& spec);

/// int_{|u| = t, u in X} (f(x) - f(x + u)) dsigma(u), the l-inf sphere split
/// into its faces; the surface measure integrates to mu(B_t).
Estimate shell_difference(const FunctionModel& f, const Space& space, const Point& x, double t,
                          const QuadratureSpec& spec);

/// Dbar_{P,h} f(x) = int_{X \ B_h} (f(x) - f(x+u)) P(rho(u)) dmu(u).
/// Needs either a declared support (f == far_value outside B_R, giving a closed
/// tail) or a certified sup norm (the tail beyond the cutoff enters the error
/// bound).
Estimate hypersingular_truncated(const FunctionModel& f, const Space& space, const Kernel& P, double h,
                                 const Point& x, const QuadratureSpec& spec);

/// D_P f(x) = int_X (f(x) - f(x+u)) P(rho(u)) dmu(u), split at `split_radius`
/// into a singular part (substituted radial quadrature) and the truncated
/// operator. f must carry a certified H^omega bound, and a power-law kernel
/// needs the exponent of omega at 0 to exceed beta.
Estimate hypersingular_full(const FunctionModel& f, const Space& space, const Modulus& omega, const Kernel& P,
                            const Point& x, const QuadratureSpec& spec, double split_radius = 1.0);

/// holder_norm * A + 2 * sup_norm * T
double hypersingular_rhs(double holder_norm, double sup_norm, double A, double T);

}  // namespace sharp
