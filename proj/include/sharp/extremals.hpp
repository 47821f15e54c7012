#pragma once

#include <span>
#include <utility>

#include "sharp/function_model.hpp"
#include "sharp/modulus.hpp"
#include "sharp/space.hpp"

namespace sharp {

/// f_{e,h}(x) = (omega(h) - omega(rho(x, theta)))_+ with sup = omega(h),
/// H^omega bound 1, seminorm_h = L1 = omega(h) mu(B_h) - I(h), support h and
/// upper gradient 1/2.
FunctionModel make_f_eh(const Space& space, const Modulus& omega, double h);

/// f_omega(x) = c + sign * omega(rho(x, theta)), sign = +1 or -1; H^omega bound 1.
FunctionModel make_f_omega(const Space& space, const Modulus& omega, double c, int sign);

/// f_{e,omega}(x) = omega(rho) - omega(h)/2 inside B_h, omega(h)/2 outside;
/// sup norm omega(h)/2, H^omega bound 1.
FunctionModel make_f_e_omega(const Space& space, const Modulus& omega, double h);

/// int over prod [0, e_i] of (omega(h) - omega(|u|_inf))_+ du for e_i >= 0, in
/// closed form through the layer decomposition with V(t) = prod min(t, e_i).
double orthant_box_integral(const Modulus& omega, double h, std::span<const double> e);

/// g_{e,h}(x) = int_0^{x_1} ... int_0^{x_d} f_{e,h}(u) du on R^d (m = 0), with
/// mixed derivative f_{e,h} and ||g|| = h^d omega(h) - 2^{-d} I(h).
FunctionModel make_g_eh(const Modulus& omega, double h, int d);

struct SplitPoint {
  double a;
  double residual;
};

/// J(a) = int_{x in B_h, x_1 < a} (omega(h) - omega(|x|_inf)) dx on
/// (0,h) x (-h,h)^{d-1}.
double split_objective(const Modulus& omega, double h, int d, double a);

/// The 0 < a < h with J(a) = J(h)/2, by bisection.
SplitPoint split_point_a(const Modulus& omega, double h, int d);

/// G_{e,h}(x) = int_a^{x_1} int_0^{x_2} ... int_0^{x_d} f_{e,h}(u) du on
/// R_+ x R^{d-1} (m = 1), with mixed derivative f_{e,h} and
/// ||G|| = h^d omega(h)/2 - 2^{-d} I(h).
FunctionModel make_G_eh(const Modulus& omega, double h, int d);

/// Phi(x) = int over [0, x] of f_{e,h} on R^m_+ x R^{d-m}, orientation taken
/// coordinatewise. Its mixed derivative is f_{e,h} and ||Phi|| is the integral
/// of f_{e,h} over the positive orthant. For m = 0 this is g_{e,h}; for m >= 2
/// it satisfies the additive bound with a strictly positive gap.
FunctionModel make_orthant_primitive(const Modulus& omega, double h, int d, int m);

/// (f_{e,h}, 1/2): the extremal for the upper-gradient inequality.
std::pair<FunctionModel, double> sobolev_extremal_pair(const Space& space, const Modulus& omega, double h);

}  // namespace sharp
