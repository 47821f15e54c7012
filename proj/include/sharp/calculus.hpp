#pragma once

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "sharp/function_model.hpp"
#include "sharp/modulus.hpp"
#include "sharp/quadrature.hpp"
#include "sharp/space.hpp"

namespace sharp {

/// Resolves Auto to the natural route for the space and modulus.
QuadratureMethod resolve_method(const Space& space, const Modulus& omega, QuadratureMethod requested);

/// I(h) = integral over B_h of omega(rho(u, theta)).
Estimate ball_integral_of_modulus(const Space& space, const Modulus& omega, double h, const QuadratureSpec& spec);

/// Integral of g over [0, h] after the substitution t = h s^k. k > 1 removes an
/// integrable singularity t^{gamma} at the origin once k (gamma + 1) >= 1.
Estimate integrate_from_zero(const std::function<double(double)>& g, double h, double k, const QuadratureSpec& spec,
                             std::span<const double> breakpoints = {});

/// Integral over B_h of g(rho(u, theta)) through the radial reduction
/// 2^{d-m} d \int_0^h g(t) t^{d-1} dt (continuum) or the exact shell sum
/// (lattice). `singular_k` is forwarded to integrate_from_zero.
Estimate radial_ball_integral(const Space& space, const std::function<double(double)>& g, double h,
                              const QuadratureSpec& spec, std::span<const double> breakpoints = {},
                              double singular_k = 1.0);

/// Number of lattice points with |x|_inf < s for any s > 0 (no B_h != {theta} check).
std::int64_t lattice_count_below(const Space& space, double s);

/// Integral over B_H of a radial profile, from mu and I of the profile's shape.
Estimate profile_ball_integral(const Space& space, const RadialProfile& profile, double H, const QuadratureSpec& spec);

/// Integral of f over the translated ball x + B_h. Lattice: exact sum.
/// Continuum: nested adaptive Simpson over the box (or Monte Carlo when asked);
/// a radial f centred at x = theta goes through profile_ball_integral.
Estimate ball_integral_at(const FunctionModel& f, const Space& space, double h, const Point& x,
                          const QuadratureSpec& spec);

/// A sampled estimate paired with the certified value it should not exceed.
struct CheckedValue {
  Estimate estimate;
  std::optional<double> certified;
  bool disagreement = false;  // estimate exceeds the certificate beyond tolerance

  double value() const { return certified.value_or(estimate.value); }
};

/// Search points: a uniform grid over the window [-W, W]^d (half-line
/// coordinates from 0), step at most `step`, plus theta. All integer points on
/// a lattice.
std::vector<Point> search_grid(const Space& space, double window_radius, double step);

/// Without a certificate both seminorms are lower estimates: the sup runs over
/// the search grid (and, globally, over h_grid) only.
CheckedValue seminorm_local(const FunctionModel& f, const Space& space, double h, double window_radius,
                            const QuadratureSpec& spec);
CheckedValue seminorm_global(const FunctionModel& f, const Space& space, std::span<const double> h_grid,
                             double window_radius, const QuadratureSpec& spec);

/// max |f(x) - f(y)| / omega(rho(x, y)) over the pairs; a lower bound for ||f||_{H^omega}.
double holder_lower_estimate(const FunctionModel& f, const Space& space, const Modulus& omega,
                             std::span<const std::pair<Point, Point>> pairs);

/// All pairs of lattice points in [-W, W]^d (half-line coordinates from 0).
std::vector<std::pair<Point, Point>> lattice_pairs(const Space& space, int window_radius);

CheckedValue sup_norm(const FunctionModel& f, const Space& space, double window_radius, double grid_step);
CheckedValue l1_norm(const FunctionModel& f, const Space& space, double window_radius, const QuadratureSpec& spec);

/// max over pairs of |f(x)-f(y)| - (G(x)+G(y)) omega(rho(x,y)) for a constant
/// upper gradient G; nonpositive when G is admissible on the pairs.
double upper_gradient_excess(const FunctionModel& f, double gradient, const Space& space, const Modulus& omega,
                             std::span<const std::pair<Point, Point>> pairs);

}  // namespace sharp
