#pragma once

#include <span>
#include <vector>

#include "sharp/calculus.hpp"
#include "sharp/function_model.hpp"
#include "sharp/modulus.hpp"
#include "sharp/quadrature.hpp"
#include "sharp/space.hpp"

namespace sharp {

/// mu(B_h) as a double: Lebesgue measure or exact lattice count.
double ball_mass(const Space& space, double h);

/// S_h f(x) = (1/mu(B_h)) int_{B_h} f(x+u) du. The result carries
/// operator_norm = 1/mu(B_h) and inherits the sup and H^omega bounds of f,
/// both of which averaging cannot increase.
FunctionModel steklov_average(const FunctionModel& f, const Space& space, double h, const QuadratureSpec& spec);

/// I(h)/mu(B_h): the deviation U(A, S_h; M) of S_h on the unit H^omega ball.
double deviation_u(const Space& space, const Modulus& omega, double h, const QuadratureSpec& spec);

/// holder_norm * I(h)/mu(B_h); bounds ||f - S_h f||_B.
double ostrowski_bound(const Space& space, const Modulus& omega, double h, double holder_norm,
                       const QuadratureSpec& spec);

/// holder_norm * I(h)/mu(B_h) + seminorm_h/mu(B_h); bounds ||f||_B.
double nagy_rhs(const Space& space, const Modulus& omega, double h, double holder_norm, double seminorm_h,
                const QuadratureSpec& spec);
/// Same with the L1 norm in place of the seminorm.
double nagy_l1_rhs(const Space& space, const Modulus& omega, double h, double holder_norm, double l1_norm,
                   const QuadratureSpec& spec);
/// 2 * gradient_bound * I(h)/mu(B_h) + seminorm_h/mu(B_h); bounds ||f||_inf
/// for f with an upper gradient bounded by gradient_bound.
double sobolev_rhs(const Space& space, const Modulus& omega, double h, double gradient_bound, double seminorm_h,
                   const QuadratureSpec& spec);

/// A charge absolutely continuous with respect to mu, held by its density.
struct ChargeModel {
  FunctionModel density;
};

/// nu(x + B_h)
Estimate charge_of_ball(const ChargeModel& nu, const Space& space, double h, const Point& x,
                        const QuadratureSpec& spec);
/// x -> nu(x + B_h)/mu(B_h); pointwise the Steklov average of the density.
FunctionModel charge_average(const ChargeModel& nu, const Space& space, double h, const QuadratureSpec& spec);
/// sup_x |nu(x + B_h)| over the search window, taken directly from nu(x + B_h).
CheckedValue charge_seminorm(const ChargeModel& nu, const Space& space, double h, double window_radius,
                             const QuadratureSpec& spec);
double charge_nagy_rhs(const Space& space, const Modulus& omega, double h, double holder_norm,
                       double charge_seminorm_h, const QuadratureSpec& spec);

struct StechkinPoint {
  double N;
  double h;  // mu(B_h) = 1/N
  double E;  // E_N = I(h)/mu(B_h)
};

/// Radius with mu(B_h) = 1/N, by monotone bisection (continuum only).
double radius_for_norm(const Space& space, double N);

/// E_N for each N in order, with the Steklov radius that attains it.
std::vector<StechkinPoint> stechkin_curve(const Space& space, const Modulus& omega, std::span<const double> N_values,
                                          const QuadratureSpec& spec);

}  // namespace sharp
