#include "sharp/mixed.hpp"

#include <cmath>
#include <stdexcept>

#include "sharp/calculus.hpp"

namespace sharp {

namespace {

void check_dims(int d, int m) {
  if (d < 1 || m < 0 || m > d) throw std::invalid_argument("need d >= 1 and 0 <= m <= d");
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in (0, 1]");
}

}  // namespace

double mixed_difference(const FunctionModel& f, const Space& space, double h, const Point& x) {
  space.require_valid_radius(h);
  const int d = space.dim(), m = space.half_dims();
  if (x.dim() != static_cast<std::size_t>(d)) throw std::invalid_argument("mixed_difference: dimension mismatch");
  double sum = 0.0;
  std::vector<double> c(d);
  for (unsigned mask = 0; mask < (1u << d); ++mask) {
    int sign = 1;
    for (int i = 0; i < d; ++i) {
      const bool plus = (mask >> i) & 1u;
      if (!plus) sign = -sign;
      // Delta+ g(x) = g(x + h) - g(x); Delta g(x) = g(x + h) - g(x - h).
      c[i] = x[i] + (plus ? h : (i < m ? 0.0 : -h));
    }
    Point y(c);
    if (!space.contains(y)) throw std::invalid_argument("mixed_difference: a difference offset leaves the domain");
    sum += sign * f(y);
  }
  return sum / (std::ldexp(1.0, d - m) * std::pow(h, d));
}

double mixed_nagy_rhs(int d, int m, const Modulus& omega, double h, double holder_norm_of_derivative,
                      double sup_norm_of_f, const QuadratureSpec& spec) {
  check_dims(d, m);
  if (!(holder_norm_of_derivative >= 0.0 && sup_norm_of_f >= 0.0))
    throw std::invalid_argument("mixed_nagy_rhs: norms must be nonnegative");
  const Space space = Space::continuum(d, m);
  const double I = ball_integral_of_modulus(space, omega, h, spec).value;
  return holder_norm_of_derivative * I / space.ball_measure(h) + std::ldexp(1.0, m) * sup_norm_of_f / std::pow(h, d);
}

double mixed_multiplicative_constant(int d, int m, double alpha) {
  check_dims(d, m);
  check_alpha(alpha);
  const double p = alpha / (d + alpha);
  return std::pow(2.0, m * p) * std::pow((d + alpha) / alpha, p);
}

double optimal_h(int d, int m, double alpha, double sup_norm, double holder_norm) {
  check_dims(d, m);
  check_alpha(alpha);
  if (!(holder_norm > 0.0)) throw std::invalid_argument("optimal_h: zero H^omega norm leaves h unbounded");
  if (!(sup_norm > 0.0)) throw std::invalid_argument("optimal_h: sup norm must be positive");
  return std::pow(2.0, m / (d + alpha)) * std::pow((d + alpha) * sup_norm / (alpha * holder_norm), 1.0 / (d + alpha));
}

double mixed_multiplicative_rhs(int d, int m, double alpha, double sup_norm, double holder_norm) {
  if (!(sup_norm >= 0.0 && holder_norm >= 0.0))
    throw std::invalid_argument("mixed_multiplicative_rhs: norms must be nonnegative");
  return mixed_multiplicative_constant(d, m, alpha) * std::pow(sup_norm, alpha / (d + alpha)) *
         std::pow(holder_norm, d / (d + alpha));
}

}  // namespace sharp
