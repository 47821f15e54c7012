#include "sharp/extremals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "sharp/calculus.hpp"
#include "sharp/operators.hpp"

namespace sharp {

namespace {

std::string describe_h(const char* name, double h) {
  std::ostringstream os;
  os.precision(12);
  os << name << "[h=" << h << "]";
  return os.str();
}

// Exact I(h) for any space: the ball integral of the bare shape profile.
double exact_ball_integral(const Space& space, const Modulus& omega, double h) {
  RadialProfile shape{omega, 0.0, 1.0, std::numeric_limits<double>::infinity(), 0.0};
  return profile_ball_integral(space, shape, h, QuadratureSpec{}).value;
}

void check_h(double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("extremal: h must be positive and finite");
}

double sign_of(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

}  // namespace

FunctionModel make_f_eh(const Space& space, const Modulus& omega, double h) {
  space.require_valid_radius(h);
  const double wh = omega(h);
  FunctionModel f = FunctionModel::from_profile(space, RadialProfile{omega, wh, -1.0, h, 0.0}, describe_h("f_eh", h));
  const double mass = ball_mass(space, h);
  const double semi = wh * mass - exact_ball_integral(space, omega, h);
  f.sup_norm = wh;
  f.holder_bound = 1.0;
  f.seminorm = SeminormCertificate{h, semi};
  f.l1_norm = semi;
  f.upper_gradient_bound = 0.5;
  return f;
}

FunctionModel make_f_omega(const Space& space, const Modulus& omega, double c, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("make_f_omega: sign must be +1 or -1");
  if (!std::isfinite(c)) throw std::invalid_argument("make_f_omega: c must be finite");
  std::ostringstream os;
  os.precision(12);
  os << "f_omega[c=" << c << ",sign=" << (sign > 0 ? '+' : '-') << "]";
  FunctionModel f = FunctionModel::from_profile(
      space, RadialProfile{omega, c, static_cast<double>(sign), std::numeric_limits<double>::infinity(), 0.0},
      os.str());
  f.holder_bound = 1.0;
  f.upper_gradient_bound = 0.5;
  if (!omega.is_power()) {
    const double top = omega.points().back().second;
    f.sup_norm = std::max(std::fabs(c), std::fabs(c + sign * top));
  }
  return f;
}

FunctionModel make_f_e_omega(const Space& space, const Modulus& omega, double h) {
  space.require_valid_radius(h);
  const double wh = omega(h);
  FunctionModel f =
      FunctionModel::from_profile(space, RadialProfile{omega, -0.5 * wh, 1.0, h, 0.5 * wh}, describe_h("f_e_omega", h));
  f.sup_norm = 0.5 * wh;
  f.holder_bound = 1.0;
  return f;
}

double orthant_box_integral(const Modulus& omega, double h, std::span<const double> e) {
  check_h(h);
  std::vector<double> s(e.begin(), e.end());
  for (double v : s)
    if (!(v >= 0.0)) throw std::invalid_argument("orthant_box_integral: edges must be nonnegative");
  std::sort(s.begin(), s.end());
  const int d = static_cast<int>(s.size());
  const double wh = omega(h);
  double total = 0.0, prefix = 1.0, lower = 0.0;
  // On [s_{j-1}, s_j] the volume V(t) = (s_0 ... s_{j-1}) t^{d-j}.
  for (int j = 0; j < d; ++j) {
    const double a = lower, b = std::min(s[j], h);
    if (a < b) {
      const int k = d - j - 1;
      const double layer = wh * (std::pow(b, k + 1) - std::pow(a, k + 1)) / (k + 1) - omega.moment(k, a, b);
      total += prefix * (d - j) * layer;
    }
    prefix *= s[j];
    lower = s[j];
    if (lower >= h) break;
  }
  return total;
}

FunctionModel make_g_eh(const Modulus& omega, double h, int d) {
  check_h(h);
  if (d < 1) throw std::invalid_argument("make_g_eh: d must be positive");
  const Space space = Space::continuum(d, 0);
  FunctionModel g;
  g.evaluator = [omega, h, d](const Point& x) {
    if (x.dim() != static_cast<std::size_t>(d)) throw std::invalid_argument("g_eh: dimension mismatch");
    double sign = 1.0;
    std::vector<double> e(d);
    for (int i = 0; i < d; ++i) {
      sign *= sign_of(x[i]);
      e[i] = std::fabs(x[i]);
    }
    return sign == 0.0 ? 0.0 : sign * orthant_box_integral(omega, h, e);
  };
  g.label = describe_h("g_eh", h);
  g.sup_norm = std::pow(h, d) * omega(h) - std::ldexp(exact_ball_integral(space, omega, h), -d);
  g.kinks = {-h, 0.0, h};
  g.mixed_derivative = std::make_shared<const FunctionModel>(make_f_eh(space, omega, h));
  return g;
}

double split_objective(const Modulus& omega, double h, int d, double a) {
  check_h(h);
  if (d < 1) throw std::invalid_argument("split_objective: d must be positive");
  std::vector<double> e(d, h);
  e[0] = std::clamp(a, 0.0, h);
  return std::ldexp(orthant_box_integral(omega, h, e), d - 1);
}

SplitPoint split_point_a(const Modulus& omega, double h, int d) {
  const double target = 0.5 * split_objective(omega, h, d, h);
  double lo = 0.0, hi = h;
  // J is continuous and strictly increasing on [0, h]; bisect to resolution.
  for (int i = 0; i < 2000; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    (split_objective(omega, h, d, mid) < target ? lo : hi) = mid;
  }
  const double rl = split_objective(omega, h, d, lo) - target, rh = split_objective(omega, h, d, hi) - target;
  return std::fabs(rl) <= std::fabs(rh) ? SplitPoint{lo, rl} : SplitPoint{hi, rh};
}

FunctionModel make_G_eh(const Modulus& omega, double h, int d) {
  check_h(h);
  if (d < 1) throw std::invalid_argument("make_G_eh: d must be positive");
  const Space space = Space::continuum(d, 1);
  const double a = split_point_a(omega, h, d).a;
  FunctionModel G;
  // Phi(y) = int_0^{y_1} int_0^{y_2} ... f_{e,h}, with y_1 >= 0; G = Phi(x) - Phi(a, x_2, ...).
  G.evaluator = [omega, h, d, a](const Point& x) {
    if (x.dim() != static_cast<std::size_t>(d)) throw std::invalid_argument("G_eh: dimension mismatch");
    if (x[0] < 0.0) throw std::invalid_argument("G_eh: first coordinate must be nonnegative");
    double sign = 1.0;
    std::vector<double> e(d);
    for (int i = 1; i < d; ++i) {
      sign *= sign_of(x[i]);
      e[i] = std::fabs(x[i]);
    }
    if (sign == 0.0) return 0.0;
    e[0] = x[0];
    const double at_x = orthant_box_integral(omega, h, e);
    e[0] = a;
    return sign * (at_x - orthant_box_integral(omega, h, e));
  };
  G.label = describe_h("G_eh", h);
  G.sup_norm = 0.5 * std::pow(h, d) * omega(h) - std::ldexp(exact_ball_integral(space, omega, h), -d);
  G.kinks = {-h, 0.0, a, h};
  G.mixed_derivative = std::make_shared<const FunctionModel>(make_f_eh(space, omega, h));
  return G;
}

FunctionModel make_orthant_primitive(const Modulus& omega, double h, int d, int m) {
  check_h(h);
  const Space space = Space::continuum(d, m);
  FunctionModel phi;
  phi.evaluator = [space, omega, h, d](const Point& x) {
    if (!space.contains(x)) throw std::invalid_argument("orthant primitive: point outside the space");
    double sign = 1.0;
    std::vector<double> e(d);
    for (int i = 0; i < d; ++i) {
      sign *= sign_of(x[i]);
      e[i] = std::fabs(x[i]);
    }
    return sign == 0.0 ? 0.0 : sign * orthant_box_integral(omega, h, e);
  };
  phi.label = describe_h("orthant_primitive", h);
  const std::vector<double> corner(d, h);
  phi.sup_norm = orthant_box_integral(omega, h, corner);
  phi.kinks = {-h, 0.0, h};
  phi.mixed_derivative = std::make_shared<const FunctionModel>(make_f_eh(space, omega, h));
  return phi;
}

std::pair<FunctionModel, double> sobolev_extremal_pair(const Space& space, const Modulus& omega, double h) {
  return {make_f_eh(space, omega, h), 0.5};
}

}  // namespace sharp
