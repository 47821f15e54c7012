#pragma once

#include "sharp/function_model.hpp"
#include "sharp/modulus.hpp"
#include "sharp/quadrature.hpp"
#include "sharp/space.hpp"

namespace sharp {

/// S_h f(x) = (Delta+_{1,h} ... Delta+_{m,h} Delta_{m+1,h} ... Delta_{d,h}) f(x) / (2^{d-m} h^d),
/// forward differences on the half-line axes and centred ones elsewhere. Equals
/// the Steklov average of the mixed derivative of f over x + B_h.
double mixed_difference(const FunctionModel& f, const Space& space, double h, const Point& x);

/// holder_norm * I(h)/(2^{d-m} h^d) + 2^m sup_norm / h^d; bounds the sup norm
/// of the mixed derivative.
double mixed_nagy_rhs(int d, int m, const Modulus& omega, double h, double holder_norm_of_derivative,
                      double sup_norm_of_f, const QuadratureSpec& spec);

/// 2^{m alpha/(d+alpha)} ((d+alpha)/alpha)^{alpha/(d+alpha)}
double mixed_multiplicative_constant(int d, int m, double alpha);

/// Minimiser of the additive bound over h for omega = t^alpha.
double optimal_h(int d, int m, double alpha, double sup_norm, double holder_norm);

/// C ||f||^{alpha/(d+alpha)} ||d_I f||_{H^omega}^{d/(d+alpha)}
double mixed_multiplicative_rhs(int d, int m, double alpha, double sup_norm, double holder_norm);

}  // namespace sharp
