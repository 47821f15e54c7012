#include "sharp/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace sharp {

namespace {

void require_nonnegative(double v, const char* what) {
  if (!(v >= 0.0)) throw std::invalid_argument(std::string(what) + " must be nonnegative");
}

}  // namespace

double ball_mass(const Space& space, double h) {
  return space.is_lattice() ? static_cast<double>(space.ball_count(h)) : space.ball_measure(h);
}

FunctionModel steklov_average(const FunctionModel& f, const Space& space, double h, const QuadratureSpec& spec) {
  spec.validate();
  space.require_valid_radius(h);
  const double mass = ball_mass(space, h);
  FunctionModel out;
  out.evaluator = [f, space, h, spec, mass](const Point& x) {
    return ball_integral_at(f, space, h, x, spec).value / mass;
  };
  out.label = "S_h(" + f.label + ")";
  out.operator_norm = 1.0 / mass;
  out.sup_norm = f.sup_norm;
  out.holder_bound = f.holder_bound;
  if (f.support_radius) {
    out.support_radius = *f.support_radius + h;
    out.far_value = f.far_value;
  }
  return out;
}

double deviation_u(const Space& space, const Modulus& omega, double h, const QuadratureSpec& spec) {
  return ball_integral_of_modulus(space, omega, h, spec).value / ball_mass(space, h);
}

double ostrowski_bound(const Space& space, const Modulus& omega, double h, double holder_norm,
                       const QuadratureSpec& spec) {
  require_nonnegative(holder_norm, "holder_norm");
  return holder_norm * deviation_u(space, omega, h, spec);
}

double nagy_rhs(const Space& space, const Modulus& omega, double h, double holder_norm, double seminorm_h,
                const QuadratureSpec& spec) {
  require_nonnegative(seminorm_h, "seminorm_h");
  return ostrowski_bound(space, omega, h, holder_norm, spec) + seminorm_h / ball_mass(space, h);
}

double nagy_l1_rhs(const Space& space, const Modulus& omega, double h, double holder_norm, double l1_norm,
                   const QuadratureSpec& spec) {
  require_nonnegative(l1_norm, "l1_norm");
  return nagy_rhs(space, omega, h, holder_norm, l1_norm, spec);
}

double sobolev_rhs(const Space& space, const Modulus& omega, double h, double gradient_bound, double seminorm_h,
                   const QuadratureSpec& spec) {
  require_nonnegative(gradient_bound, "gradient_bound");
  return nagy_rhs(space, omega, h, 2.0 * gradient_bound, seminorm_h, spec);
}

Estimate charge_of_ball(const ChargeModel& nu, const Space& space, double h, const Point& x,
                        const QuadratureSpec& spec) {
  return ball_integral_at(nu.density, space, h, x, spec);
}

FunctionModel charge_average(const ChargeModel& nu, const Space& space, double h, const QuadratureSpec& spec) {
  spec.validate();
  space.require_valid_radius(h);
  const double mass = ball_mass(space, h);
  FunctionModel out;
  out.evaluator = [nu, space, h, spec, mass](const Point& x) {
    return charge_of_ball(nu, space, h, x, spec).value / mass;
  };
  out.label = "Sbar_h(" + nu.density.label + ")";
  out.operator_norm = 1.0 / mass;
  out.sup_norm = nu.density.sup_norm;
  out.holder_bound = nu.density.holder_bound;
  return out;
}

CheckedValue charge_seminorm(const ChargeModel& nu, const Space& space, double h, double window_radius,
                             const QuadratureSpec& spec) {
  spec.validate();
  space.require_valid_radius(h);
  const FunctionModel& f = nu.density;
  if (f.compactly_supported() && window_radius < *f.support_radius + h)
    throw std::invalid_argument("charge_seminorm: window radius is smaller than the support plus h");
  CheckedValue out;
  bool first = true;
  for (const Point& x : search_grid(space, window_radius, h / spec.grid_divisions)) {
    Estimate e = charge_of_ball(nu, space, h, x, spec);
    e.value = std::fabs(e.value);
    if (first || e.value > out.estimate.value) out.estimate = e;
    first = false;
  }
  if (f.seminorm && f.seminorm->h == h) {
    out.certified = f.seminorm->value;
    out.disagreement = out.estimate.value > *out.certified + 1e-7 * std::max(1.0, *out.certified) +
                                                4.0 * out.estimate.error_bound;
  }
  return out;
}

double charge_nagy_rhs(const Space& space, const Modulus& omega, double h, double holder_norm,
                       double charge_seminorm_h, const QuadratureSpec& spec) {
  return nagy_rhs(space, omega, h, holder_norm, charge_seminorm_h, spec);
}

double radius_for_norm(const Space& space, double N) {
  if (!(N > 0.0) || !std::isfinite(N)) throw std::invalid_argument("stechkin: N must be positive and finite");
  if (space.is_lattice()) throw std::invalid_argument("stechkin: the lattice ball measure is a step function");
  const double target = 1.0 / N;
  double lo = 1.0, hi = 1.0;
  while (space.ball_measure(lo) > target) lo *= 0.5;
  while (space.ball_measure(hi) < target) hi *= 2.0;
  // Run to floating-point resolution; this is well inside 1e-12 relative.
  for (int i = 0; i < 2000; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    (space.ball_measure(mid) < target ? lo : hi) = mid;
  }
  const double a = space.ball_measure(lo) - target, b = space.ball_measure(hi) - target;
  return std::fabs(a) <= std::fabs(b) ? lo : hi;
}

std::vector<StechkinPoint> stechkin_curve(const Space& space, const Modulus& omega, std::span<const double> N_values,
                                          const QuadratureSpec& spec) {
  std::vector<StechkinPoint> out;
  out.reserve(N_values.size());
  for (double N : N_values) {
    const double h = radius_for_norm(space, N);
    out.push_back({N, h, deviation_u(space, omega, h, spec)});
  }
  return out;
}

}  // namespace sharp
