#include "sharp/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sharp {

namespace {

// Search grids larger than this are a configuration mistake, not a workload.
constexpr std::size_t kMaxGridPoints = 5'000'000;

// A sampled estimate disagrees with its certificate when it exceeds it by more
// than this relative slack plus four reported standard errors.
constexpr double kCertificateSlack = 1e-7;

double orthant_factor(const Space& space) { return std::ldexp(1.0, space.dim() - space.half_dims()); }

std::int64_t lattice_shell(const Space& space, std::int64_t k) {
  auto count = [&](std::int64_t r) -> std::int64_t {
    if (r < 0) return 0;
    std::int64_t n = 1;
    for (int i = 0; i < space.dim(); ++i) n *= (i < space.half_dims()) ? (r + 1) : (2 * r + 1);
    return n;
  };
  return count(k) - count(k - 1);
}

bool exceeds(double estimate, double error, double certified) {
  return estimate > certified + kCertificateSlack * std::max(1.0, std::fabs(certified)) + 4.0 * error;
}

Estimate monte_carlo_ball(const Space& space, double h, const Point& centre, const QuadratureSpec& spec,
                          const std::function<double(const Point&)>& g) {
  if (spec.mc_samples == 0) throw std::invalid_argument("Monte Carlo needs mc_samples >= 1");
  RunningStats stats;
  for (std::size_t i = 0; i < spec.mc_samples; ++i)
    stats.add(g(space.translate(centre, space.sample_ball_point(h, spec.seed, i))));
  const double mass = space.is_lattice() ? static_cast<double>(space.ball_count(h)) : space.ball_measure(h);
  return {mass * stats.mean(), QuadratureMethod::MonteCarlo, mass * stats.standard_error()};
}

std::vector<double> per_axis_values(const Space& space, int axis, double window_radius, double step) {
  std::vector<double> values;
  const bool half = axis < space.half_dims();
  if (space.is_lattice()) {
    const auto w = static_cast<std::int64_t>(std::floor(window_radius));
    for (std::int64_t v = half ? 0 : -w; v <= w; ++v) values.push_back(static_cast<double>(v));
    return values;
  }
  const auto n = static_cast<std::int64_t>(std::ceil(window_radius / step));
  if (n == 0) return {0.0};
  for (std::int64_t i = half ? 0 : -n; i <= n; ++i) values.push_back(window_radius * static_cast<double>(i) / n);
  return values;
}

void check_window(const FunctionModel& f, double window_radius, double needed_beyond_support) {
  if (!(window_radius >= 0.0)) throw std::invalid_argument("window radius must be nonnegative");
  if (f.compactly_supported() && window_radius < *f.support_radius + needed_beyond_support)
    throw std::invalid_argument("window radius is smaller than the declared support of the function");
}

}  // namespace

FunctionModel FunctionModel::constant(double c) {
  FunctionModel f;
  f.evaluator = [c](const Point&) { return c; };
  f.label = "constant";
  f.holder_bound = 0.0;
  f.sup_norm = std::fabs(c);
  f.upper_gradient_bound = 0.0;
  f.far_value = c;
  if (c == 0.0) {
    f.support_radius = 0.0;
    f.l1_norm = 0.0;
  }
  return f;
}

FunctionModel FunctionModel::from_profile(const Space& space, RadialProfile profile, std::string label) {
  FunctionModel f;
  f.evaluator = [space, profile](const Point& x) { return profile(space.norm(x)); };
  f.label = std::move(label);
  f.radial = profile;
  f.kinks = {0.0};
  if (std::isfinite(profile.radius)) {
    f.support_radius = profile.radius;
    f.far_value = profile.outer_value;
    f.kinks = {-profile.radius, 0.0, profile.radius};
  }
  return f;
}

QuadratureMethod resolve_method(const Space& space, const Modulus& omega, QuadratureMethod requested) {
  if (requested != QuadratureMethod::Auto) return requested;
  if (space.is_lattice()) return QuadratureMethod::LatticeExact;
  return omega.is_power() ? QuadratureMethod::ClosedForm : QuadratureMethod::Radial1D;
}

Estimate integrate_from_zero(const std::function<double(double)>& g, double h, double k, const QuadratureSpec& spec,
                             std::span<const double> breakpoints) {
  if (!(h >= 0.0)) throw std::invalid_argument("integrate_from_zero: need h >= 0");
  if (!(k >= 1.0)) throw std::invalid_argument("integrate_from_zero: substitution exponent must be >= 1");
  if (h == 0.0) return {0.0, QuadratureMethod::Radial1D, 0.0};
  if (k == 1.0) return integrate_adaptive(g, 0.0, h, spec, breakpoints);
  std::vector<double> s_breaks;
  for (double t : breakpoints)
    if (t > 0.0 && t < h) s_breaks.push_back(std::pow(t / h, 1.0 / k));
  auto integrand = [&](double s) {
    if (s <= 0.0) return 0.0;
    const double t = h * std::pow(s, k);
    return g(t) * h * k * std::pow(s, k - 1.0);
  };
  return integrate_adaptive(integrand, 0.0, 1.0, spec, s_breaks);
}

std::int64_t lattice_count_below(const Space& space, double s) {
  if (!space.is_lattice()) throw std::invalid_argument("lattice_count_below: lattice space required");
  if (!(s > 0.0)) throw std::invalid_argument("lattice_count_below: need s > 0");
  const std::int64_t k = Space::lattice_radius(s);
  std::int64_t n = 1;
  for (int i = 0; i < space.dim(); ++i) n *= (i < space.half_dims()) ? (k + 1) : (2 * k + 1);
  return n;
}

Estimate radial_ball_integral(const Space& space, const std::function<double(double)>& g, double h,
                              const QuadratureSpec& spec, std::span<const double> breakpoints, double singular_k) {
  if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("radial_ball_integral: need finite h > 0");
  if (space.is_lattice()) {
    double sum = 0.0;
    for (std::int64_t k = 0; k <= Space::lattice_radius(h); ++k)
      sum += static_cast<double>(lattice_shell(space, k)) * g(static_cast<double>(k));
    return {sum, QuadratureMethod::LatticeExact, 0.0};
  }
  const int d = space.dim();
  auto weighted = [&](double t) { return d == 1 ? g(t) : g(t) * std::pow(t, d - 1); };
  Estimate e = integrate_from_zero(weighted, h, singular_k, spec, breakpoints);
  const double factor = orthant_factor(space) * d;
  return {factor * e.value, QuadratureMethod::Radial1D, factor * e.error_bound};
}

Estimate ball_integral_of_modulus(const Space& space, const Modulus& omega, double h, const QuadratureSpec& spec) {
  spec.validate();
  space.require_valid_radius(h);
  const QuadratureMethod method = resolve_method(space, omega, spec.method);
  const int d = space.dim();
  switch (method) {
    case QuadratureMethod::ClosedForm: {
      if (space.is_lattice() || !omega.is_power())
        throw std::invalid_argument("ClosedForm ball integral needs a continuum space and a power modulus");
      const double a = omega.alpha();
      return {d * orthant_factor(space) / (d + a) * std::pow(h, d + a), QuadratureMethod::ClosedForm, 0.0};
    }
    case QuadratureMethod::Radial1D: {
      if (space.is_lattice()) throw std::invalid_argument("Radial1D needs a continuum space; use LatticeExact");
      std::vector<double> breaks;
      for (const auto& p : omega.points()) breaks.push_back(p.first);
      const double k = omega.exponent_at_zero() < 1.0 ? 2.0 : 1.0;
      return radial_ball_integral(space, [&](double t) { return omega(t); }, h, spec, breaks, k);
    }
    case QuadratureMethod::LatticeExact: {
      if (!space.is_lattice()) throw std::invalid_argument("LatticeExact needs a lattice space");
      return radial_ball_integral(space, [&](double t) { return omega(t); }, h, spec);
    }
    case QuadratureMethod::MonteCarlo:
      return monte_carlo_ball(space, h, space.origin(), spec, [&](const Point& u) { return omega(space.norm(u)); });
    case QuadratureMethod::Auto:
      break;
  }
  throw std::logic_error("ball_integral_of_modulus: unresolved method");
}

Estimate profile_ball_integral(const Space& space, const RadialProfile& profile, double H, const QuadratureSpec&) {
  if (!(H > 0.0) || !std::isfinite(H)) throw std::invalid_argument("profile_ball_integral: need finite H > 0");
  if (space.is_lattice()) {
    double sum = 0.0;
    for (std::int64_t k = 0; k <= Space::lattice_radius(H); ++k)
      sum += static_cast<double>(lattice_shell(space, k)) * profile(static_cast<double>(k));
    return {sum, QuadratureMethod::LatticeExact, 0.0};
  }
  const int d = space.dim();
  const double s = std::min(H, profile.radius);
  const double factor = orthant_factor(space);
  const double inner = factor * (profile.inner_const * std::pow(s, d) +
                                 profile.inner_coeff * d * profile.shape.moment(d - 1, 0.0, s));
  const double outer = H > s ? profile.outer_value * factor * (std::pow(H, d) - std::pow(s, d)) : 0.0;
  return {inner + outer, QuadratureMethod::ClosedForm, 0.0};
}

Estimate ball_integral_at(const FunctionModel& f, const Space& space, double h, const Point& x,
                          const QuadratureSpec& spec) {
  spec.validate();
  space.require_valid_radius(h);
  if (!space.contains(x)) throw std::invalid_argument("ball_integral_at: centre is not a point of the space");
  if (spec.method == QuadratureMethod::MonteCarlo) return monte_carlo_ball(space, h, x, spec, f.evaluator);
  if (space.is_lattice()) {
    double sum = 0.0;
    for (const Point& u : space.enumerate_ball(h)) sum += f(space.translate(x, u));
    return {sum, QuadratureMethod::LatticeExact, 0.0};
  }
  if (f.radial && x == space.origin()) return profile_ball_integral(space, *f.radial, h, spec);

  const int d = space.dim();
  std::vector<double> lo(d), hi(d);
  std::vector<std::vector<double>> breaks(d);
  for (int i = 0; i < d; ++i) {
    lo[i] = i < space.half_dims() ? x[i] : x[i] - h;
    hi[i] = x[i] + h;
    breaks[i] = f.kinks;
  }
  Point scratch(std::vector<double>(d, 0.0));
  auto g = [&](std::span<const double> u) {
    for (int i = 0; i < d; ++i) scratch[i] = u[i];
    return f(scratch);
  };
  Estimate e = integrate_box(g, lo, hi, spec, breaks);
  e.method = QuadratureMethod::Radial1D;
  return e;
}

std::vector<Point> search_grid(const Space& space, double window_radius, double step) {
  if (!(window_radius >= 0.0)) throw std::invalid_argument("search_grid: window radius must be nonnegative");
  if (!space.is_lattice() && !(step > 0.0)) throw std::invalid_argument("search_grid: step must be positive");
  std::vector<std::vector<double>> axes;
  std::size_t total = 1;
  for (int i = 0; i < space.dim(); ++i) {
    axes.push_back(per_axis_values(space, i, window_radius, step));
    total *= axes.back().size();
    if (total > kMaxGridPoints) throw std::invalid_argument("search_grid: grid too large; coarsen the step");
  }
  std::vector<Point> points;
  points.reserve(total);
  std::vector<std::size_t> idx(space.dim(), 0);
  for (std::size_t n = 0; n < total; ++n) {
    std::vector<double> c(space.dim());
    for (int i = 0; i < space.dim(); ++i) c[i] = axes[i][idx[i]];
    points.emplace_back(std::move(c));
    for (int i = space.dim() - 1; i >= 0; --i) {
      if (++idx[i] < axes[i].size()) break;
      idx[i] = 0;
    }
  }
  return points;
}

CheckedValue seminorm_local(const FunctionModel& f, const Space& space, double h, double window_radius,
                            const QuadratureSpec& spec) {
  spec.validate();
  space.require_valid_radius(h);
  check_window(f, window_radius, h);
  CheckedValue out;
  out.estimate = {0.0, QuadratureMethod::LatticeExact, 0.0};
  bool first = true;
  for (const Point& x : search_grid(space, window_radius, h / spec.grid_divisions)) {
    Estimate e = ball_integral_at(f, space, h, x, spec);
    e.value = std::fabs(e.value);
    if (first || e.value > out.estimate.value) out.estimate = e;
    first = false;
  }
  if (f.seminorm && f.seminorm->h == h) {
    out.certified = f.seminorm->value;
    out.disagreement = exceeds(out.estimate.value, out.estimate.error_bound, *out.certified);
  }
  return out;
}

CheckedValue seminorm_global(const FunctionModel& f, const Space& space, std::span<const double> h_grid,
                             double window_radius, const QuadratureSpec& spec) {
  if (h_grid.empty()) throw std::invalid_argument("seminorm_global: h grid must be nonempty");
  CheckedValue out;
  bool first = true;
  for (double h : h_grid) {
    FunctionModel probe = f;
    probe.seminorm.reset();
    CheckedValue local = seminorm_local(probe, space, h, window_radius, spec);
    if (first || local.estimate.value > out.estimate.value) out.estimate = local.estimate;
    first = false;
  }
  // |int_{x+B_H} f| <= ||f||_1 for every H, so a seminorm certified equal to the
  // L1 norm is also the global seminorm.
  if (f.seminorm && f.l1_norm && f.seminorm->value == *f.l1_norm) {
    out.certified = *f.l1_norm;
    out.disagreement = exceeds(out.estimate.value, out.estimate.error_bound, *out.certified);
  }
  return out;
}

double holder_lower_estimate(const FunctionModel& f, const Space& space, const Modulus& omega,
                             std::span<const std::pair<Point, Point>> pairs) {
  double best = 0.0;
  for (const auto& [x, y] : pairs) {
    const double r = space.distance(x, y);
    if (r == 0.0) throw std::invalid_argument("holder_lower_estimate: coincident pair");
    const double diff = std::fabs(f(x) - f(y));
    const double w = omega(r);
    if (w == 0.0) {
      if (diff > 0.0) return std::numeric_limits<double>::infinity();
      continue;
    }
    best = std::max(best, diff / w);
  }
  return best;
}

std::vector<std::pair<Point, Point>> lattice_pairs(const Space& space, int window_radius) {
  if (!space.is_lattice()) throw std::invalid_argument("lattice_pairs: lattice space required");
  const std::vector<Point> pts = search_grid(space, window_radius, 1.0);
  std::vector<std::pair<Point, Point>> pairs;
  pairs.reserve(pts.size() * (pts.size() - 1) / 2);
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) pairs.emplace_back(pts[i], pts[j]);
  return pairs;
}

CheckedValue sup_norm(const FunctionModel& f, const Space& space, double window_radius, double grid_step) {
  check_window(f, window_radius, 0.0);
  CheckedValue out;
  out.estimate = {0.0, space.is_lattice() ? QuadratureMethod::LatticeExact : QuadratureMethod::Radial1D, 0.0};
  std::vector<Point> points = search_grid(space, window_radius, grid_step);
  if (f.support_radius && std::isfinite(*f.support_radius) && *f.support_radius <= window_radius && !space.is_lattice()) {
    std::vector<double> c(space.dim(), 0.0);
    c.back() = *f.support_radius;
    points.emplace_back(std::move(c));
  }
  for (const Point& x : points) out.estimate.value = std::max(out.estimate.value, std::fabs(f(x)));
  if (f.sup_norm) {
    out.certified = *f.sup_norm;
    out.disagreement = exceeds(out.estimate.value, 0.0, *out.certified);
  }
  return out;
}

CheckedValue l1_norm(const FunctionModel& f, const Space& space, double window_radius, const QuadratureSpec& spec) {
  spec.validate();
  check_window(f, window_radius, 0.0);
  CheckedValue out;
  if (space.is_lattice()) {
    double sum = 0.0;
    for (const Point& x : search_grid(space, window_radius, 1.0)) sum += std::fabs(f(x));
    out.estimate = {sum, QuadratureMethod::LatticeExact, 0.0};
  } else if (window_radius == 0.0) {
    out.estimate = {0.0, QuadratureMethod::ClosedForm, 0.0};
  } else if (spec.method == QuadratureMethod::MonteCarlo) {
    out.estimate = monte_carlo_ball(space, window_radius, space.origin(), spec,
                                    [&](const Point& x) { return std::fabs(f(x)); });
  } else if (f.radial) {
    const RadialProfile& p = *f.radial;
    std::vector<double> breaks;
    if (std::isfinite(p.radius)) breaks.push_back(p.radius);
    const double k = p.shape.exponent_at_zero() < 1.0 ? 2.0 : 1.0;
    out.estimate = radial_ball_integral(space, [&](double t) { return std::fabs(p(t)); }, window_radius, spec,
                                        breaks, k);
  } else {
    const int d = space.dim();
    std::vector<double> lo(d), hi(d, window_radius);
    for (int i = 0; i < d; ++i) lo[i] = i < space.half_dims() ? 0.0 : -window_radius;
    Point scratch(std::vector<double>(d, 0.0));
    auto g = [&](std::span<const double> u) {
      for (int i = 0; i < d; ++i) scratch[i] = u[i];
      return std::fabs(f(scratch));
    };
    out.estimate = integrate_box(g, lo, hi, spec, std::vector<std::vector<double>>(d, f.kinks));
  }
  if (f.l1_norm) {
    out.certified = *f.l1_norm;
    out.disagreement = exceeds(out.estimate.value, out.estimate.error_bound, *out.certified);
  }
  return out;
}

double upper_gradient_excess(const FunctionModel& f, double gradient, const Space& space, const Modulus& omega,
                             std::span<const std::pair<Point, Point>> pairs) {
  if (!(gradient >= 0.0)) throw std::invalid_argument("upper_gradient_excess: gradient must be nonnegative");
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& [x, y] : pairs)
    worst = std::max(worst, std::fabs(f(x) - f(y)) - 2.0 * gradient * omega(space.distance(x, y)));
  return worst;
}

}  // namespace sharp
