#include "sharp/hypersingular.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "sharp/calculus.hpp"
#include "sharp/rng.hpp"

namespace sharp {

namespace {

// Without a declared support the truncated operator is integrated out to this
// multiple of h, and the remainder is bounded through the sup norm.
constexpr double kTailCutoffFactor = 1000.0;

void require_continuum(const Space& space, const char* who) {
  if (space.is_lattice()) throw std::invalid_argument(std::string(who) + ": kernels are defined on continuum spaces");
}

double orthant_factor(const Space& space) { return std::ldexp(1.0, space.dim() - space.half_dims()); }

// Substitution exponent that makes t^gamma integrable at 0 smooth enough for
// Simpson: k (gamma + 1) >= 2.
double singular_exponent(double gamma) { return std::max(1.0, std::ceil(2.0 / (gamma + 1.0))); }

QuadratureMethod pick(const QuadratureSpec& spec, bool closed_form_available) {
  if (spec.method == QuadratureMethod::Auto)
    return closed_form_available ? QuadratureMethod::ClosedForm : QuadratureMethod::Radial1D;
  if (spec.method == QuadratureMethod::LatticeExact)
    throw std::invalid_argument("LatticeExact is not available for kernel integrals");
  if (spec.method == QuadratureMethod::ClosedForm && !closed_form_available)
    throw std::invalid_argument("no closed form for this kernel integral; use Radial1D or MonteCarlo");
  return spec.method;
}

Estimate monte_carlo(const QuadratureSpec& spec, std::uint64_t stream, const std::function<double(double)>& weight) {
  if (spec.mc_samples == 0) throw std::invalid_argument("Monte Carlo needs mc_samples >= 1");
  const CounterRng rng(spec.seed, stream);
  RunningStats stats;
  for (std::size_t i = 0; i < spec.mc_samples; ++i) stats.add(weight(rng.uniform(i)));
  return {stats.mean(), QuadratureMethod::MonteCarlo, stats.standard_error()};
}

std::vector<double> sorted_breaks(std::vector<double> v, double lo, double hi) {
  std::vector<double> out;
  for (double t : v)
    if (t > lo && t < hi && std::isfinite(t)) out.push_back(t);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Radii t at which u -> f(x + u) restricted to the sphere |u| = t may change
// its form: coordinate kinks seen from x, and the support boundary.
std::vector<double> difference_breakpoints(const FunctionModel& f, const Space& space, const Point& x,
                                           const Kernel& P) {
  std::vector<double> out;
  for (double k : f.kinks)
    for (std::size_t j = 0; j < x.dim(); ++j) out.push_back(std::fabs(k - x[j]));
  if (f.support_radius) {
    const double r = *f.support_radius, nx = space.norm(x);
    out.push_back(std::fabs(r - nx));
    out.push_back(r + nx);
  }
  for (const auto& p : P.points()) out.push_back(p.first);
  return out;
}

}  // namespace

Kernel Kernel::power_law(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw std::invalid_argument("Kernel::power_law: beta must be positive");
  Kernel k;
  k.kind_ = Kind::PowerLaw;
  k.beta_ = beta;
  return k;
}

Kernel Kernel::table(std::vector<std::pair<double, double>> points) {
  if (points.size() < 2) throw std::invalid_argument("Kernel::table: need at least two points");
  if (points.front().first != 0.0) throw std::invalid_argument("Kernel::table: first breakpoint must be t = 0");
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto [t, p] = points[i];
    if (!std::isfinite(t) || !std::isfinite(p) || p < 0.0)
      throw std::invalid_argument("Kernel::table: values must be finite and nonnegative");
    if (i > 0 && !(t > points[i - 1].first))
      throw std::invalid_argument("Kernel::table: breakpoints must be strictly increasing");
  }
  Kernel k;
  k.kind_ = Kind::Table;
  k.beta_ = 0.0;
  k.points_ = std::move(points);
  return k;
}

double Kernel::support_radius() const noexcept {
  return kind_ == Kind::Table ? points_.back().first : std::numeric_limits<double>::infinity();
}

double Kernel::operator()(double t, int d) const {
  if (!(t >= 0.0)) throw std::invalid_argument("Kernel: argument must be nonnegative");
  if (kind_ == Kind::PowerLaw) return t > 0.0 ? std::pow(t, -d - beta_) : std::numeric_limits<double>::infinity();
  if (t > points_.back().first) return 0.0;
  const auto it = std::upper_bound(points_.begin(), points_.end(), t,
                                   [](double v, const auto& p) { return v < p.first; });
  if (it == points_.end()) return points_.back().second;
  const auto& [t1, p1] = *it;
  const auto& [t0, p0] = *(it - 1);
  return p0 + (p1 - p0) * ((t - t0) / (t1 - t0));
}

std::string Kernel::label() const {
  std::ostringstream os;
  os.precision(12);
  if (kind_ == Kind::PowerLaw) {
    os << "power:" << beta_;
    return os.str();
  }
  os << "table";
  for (const auto& [t, p] : points_) os << ':' << t << '/' << p;
  return os.str();
}

Estimate kernel_ball_mass(const Space& space, const Modulus& omega, const Kernel& P, double h,
                          const QuadratureSpec& spec) {
  spec.validate();
  require_continuum(space, "kernel_ball_mass");
  space.require_valid_radius(h);
  const int d = space.dim();
  const double factor = d * orthant_factor(space);

  if (P.kind() == Kernel::Kind::PowerLaw) {
    const double a = omega.exponent_at_zero(), b = P.beta();
    if (!(a > b)) throw std::invalid_argument("kernel_ball_mass: divergent, need alpha > beta");
    // Radial integrand omega(t) P(t) t^{d-1} = omega(t) t^{-1-beta}.
    auto q = [&](double t) { return t > 0.0 ? omega(t) * std::pow(t, -1.0 - b) : 0.0; };
    switch (pick(spec, omega.is_power())) {
      case QuadratureMethod::ClosedForm:
        return {factor * std::pow(h, a - b) / (a - b), QuadratureMethod::ClosedForm, 0.0};
      case QuadratureMethod::MonteCarlo: {
        // t = h U^{1/s} with density s t^{s-1}/h^s; s = (alpha - beta)/2 keeps the weight bounded.
        const double s = 0.5 * (a - b);
        return monte_carlo(spec, 11, [&](double u) {
          const double t = h * std::pow(u, 1.0 / s);
          return t > 0.0 ? factor * q(t) * std::pow(h, s) / (s * std::pow(t, s - 1.0)) : 0.0;
        });
      }
      default: {
        std::vector<double> breaks;
        for (const auto& p : omega.points()) breaks.push_back(p.first);
        Estimate e = integrate_from_zero(q, h, singular_exponent(a - b - 1.0), spec, sorted_breaks(breaks, 0.0, h));
        return {factor * e.value, QuadratureMethod::Radial1D, factor * e.error_bound};
      }
    }
  }

  const double top = std::min(h, P.support_radius());
  auto q = [&](double t) { return omega(t) * P(t, d) * std::pow(t, d - 1); };
  switch (pick(spec, false)) {
    case QuadratureMethod::MonteCarlo:
      return monte_carlo(spec, 12, [&](double u) { return factor * top * q(top * u); });
    default: {
      std::vector<double> breaks;
      for (const auto& p : omega.points()) breaks.push_back(p.first);
      for (const auto& p : P.points()) breaks.push_back(p.first);
      Estimate e = integrate_adaptive(q, 0.0, top, spec, sorted_breaks(breaks, 0.0, top));
      return {factor * e.value, QuadratureMethod::Radial1D, factor * e.error_bound};
    }
  }
}

Estimate kernel_tail_mass(const Space& space, const Kernel& P, double h, const QuadratureSpec& spec) {
  spec.validate();
  require_continuum(space, "kernel_tail_mass");
  space.require_valid_radius(h);
  const int d = space.dim();
  const double factor = d * orthant_factor(space);

  if (P.kind() == Kernel::Kind::PowerLaw) {
    const double b = P.beta();
    switch (pick(spec, true)) {
      case QuadratureMethod::ClosedForm:
        return {factor * std::pow(h, -b) / b, QuadratureMethod::ClosedForm, 0.0};
      case QuadratureMethod::MonteCarlo: {
        // Pareto radius t = h U^{-1/s}, s = beta/2; the weight decays like t^{-beta/2}.
        const double s = 0.5 * b;
        return monte_carlo(spec, 13, [&](double u) {
          const double t = h * std::pow(u, -1.0 / s);
          return factor * std::pow(t, s - b) / (s * std::pow(h, s));
        });
      }
      default: {
        // t = h e^v on [h, C]; P(t) t^{d-1} dt = t^{-beta} dv. Beyond C the closed remainder.
        const double C = kTailCutoffFactor * h;
        Estimate e = integrate_adaptive([&](double v) { return std::pow(h * std::exp(v), -b); }, 0.0,
                                        std::log(C / h), spec);
        return {factor * (e.value + std::pow(C, -b) / b), QuadratureMethod::Radial1D, factor * e.error_bound};
      }
    }
  }

  const double R = P.support_radius();
  if (h >= R) return {0.0, QuadratureMethod::ClosedForm, 0.0};
  auto q = [&](double t) { return P(t, d) * std::pow(t, d - 1); };
  switch (pick(spec, false)) {
    case QuadratureMethod::MonteCarlo:
      return monte_carlo(spec, 14, [&](double u) { return factor * (R - h) * q(h + (R - h) * u); });
    default: {
      std::vector<double> breaks;
      for (const auto& p : P.points()) breaks.push_back(p.first);
      Estimate e = integrate_adaptive(q, h, R, spec, sorted_breaks(breaks, h, R));
      return {factor * e.value, QuadratureMethod::Radial1D, factor * e.error_bound};
    }
  }
}

double truncated_operator_norm(const Space& space, const Kernel& P, double h, const QuadratureSpec& spec) {
  return 2.0 * kernel_tail_mass(space, P, h, spec).value;
}

Estimate shell_difference(const FunctionModel& f, const Space& space, const Point& x, double t,
                          const QuadratureSpec& spec) {
  require_continuum(space, "shell_difference");
  if (!(t > 0.0)) return {0.0, QuadratureMethod::ClosedForm, 0.0};
  if (f.radial && x == space.origin())
    return {space.shell_area(t) * ((*f.radial)(0.0) - (*f.radial)(t)), QuadratureMethod::ClosedForm, 0.0};

  const int d = space.dim(), m = space.half_dims();
  const double fx = f(x);
  double total = 0.0, error = 0.0;
  Point y = x;
  for (int i = 0; i < d; ++i) {
    for (int s : {+1, -1}) {
      if (s < 0 && i < m) continue;  // half-line axes only reach u_i = +t
      if (d == 1) {
        y[0] = x[0] + s * t;
        total += fx - f(y);
        continue;
      }
      std::vector<double> lo, hi;
      std::vector<std::vector<double>> breaks;
      for (int j = 0; j < d; ++j) {
        if (j == i) continue;
        lo.push_back(j < m ? 0.0 : -t);
        hi.push_back(t);
        std::vector<double> b;
        for (double k : f.kinks) b.push_back(k - x[j]);
        breaks.push_back(std::move(b));
      }
      auto g = [&](std::span<const double> v) {
        std::size_t c = 0;
        for (int j = 0; j < d; ++j) y[j] = x[j] + (j == i ? s * t : v[c++]);
        return fx - f(y);
      };
      const Estimate e = integrate_box(g, lo, hi, spec, breaks);
      total += e.value;
      error += e.error_bound;
    }
  }
  return {total, d == 1 ? QuadratureMethod::ClosedForm : QuadratureMethod::Radial1D, error};
}

Estimate hypersingular_truncated(const FunctionModel& f, const Space& space, const Kernel& P, double h,
                                 const Point& x, const QuadratureSpec& spec) {
  spec.validate();
  require_continuum(space, "hypersingular_truncated");
  space.require_valid_radius(h);
  if (!space.contains(x)) throw std::invalid_argument("hypersingular_truncated: x is not a point of the space");
  const int d = space.dim();
  const double fx = f(x);

  double C = 0.0, tail = 0.0, tail_error = 0.0;
  const QuadratureSpec closed = spec.with_method(QuadratureMethod::Auto);
  if (f.support_radius) {
    C = std::max(h, *f.support_radius + space.norm(x));
    tail = (fx - f.far_value) * kernel_tail_mass(space, P, C, closed).value;
  } else {
    if (!f.sup_norm)
      throw std::invalid_argument("hypersingular_truncated: f needs a declared support or a certified sup norm");
    C = std::isfinite(P.support_radius()) ? std::max(h, P.support_radius()) : kTailCutoffFactor * h;
    tail_error = 2.0 * *f.sup_norm * kernel_tail_mass(space, P, C, closed).value;
  }
  C = std::min(C, std::max(h, P.support_radius()));

  Estimate middle{0.0, QuadratureMethod::Radial1D, 0.0};
  if (C > h) {
    std::vector<double> vbreaks;
    for (double t : sorted_breaks(difference_breakpoints(f, space, x, P), h, C)) vbreaks.push_back(std::log(t / h));
    double inner_error = 0.0;
    auto integrand = [&](double v) {
      const double t = h * std::exp(v);
      const Estimate s = shell_difference(f, space, x, t, spec);
      inner_error = std::max(inner_error, s.error_bound);
      return s.value * P(t, d) * t;
    };
    middle = integrate_adaptive(integrand, 0.0, std::log(C / h), spec, vbreaks);
    middle.error_bound += inner_error * kernel_tail_mass(space, P, h, closed).value;
  }
  return {middle.value + tail, QuadratureMethod::Radial1D, middle.error_bound + tail_error};
}

Estimate hypersingular_full(const FunctionModel& f, const Space& space, const Modulus& omega, const Kernel& P,
                            const Point& x, const QuadratureSpec& spec, double split_radius) {
  spec.validate();
  require_continuum(space, "hypersingular_full");
  if (!f.holder_bound) throw std::invalid_argument("hypersingular_full: f needs a certified H^omega bound");
  if (!(split_radius > 0.0) || !std::isfinite(split_radius))
    throw std::invalid_argument("hypersingular_full: split radius must be positive");
  const int d = space.dim();
  double k = 1.0;
  if (P.kind() == Kernel::Kind::PowerLaw) {
    const double a = omega.exponent_at_zero();
    if (!(a > P.beta())) throw std::invalid_argument("hypersingular_full: divergent, need alpha > beta");
    k = singular_exponent(a - P.beta() - 1.0);
  }
  const double s = split_radius;
  std::vector<double> raw_breaks = difference_breakpoints(f, space, x, P);
  // Shells below t0 contribute at most H * A(t0) in absolute value, and there
  // f(x) - f(x + u) drowns in rounding of f itself. The integral starts at t0,
  // chosen where H * A(t0) meets the larger of a hundredth of the tolerance
  // and the rounding floor, and H * A(t0) joins the error bound.
  double t0 = 0.0, cutoff_error = 0.0;
  QuadratureSpec outer = spec;
  if (P.kind() == Kernel::Kind::PowerLaw && *f.holder_bound > 0.0) {
    const QuadratureSpec closed = spec.with_method(QuadratureMethod::Auto);
    const double H = *f.holder_bound;
    const double scale = std::fabs(f(x)) + (f.sup_norm ? *f.sup_norm : 0.0) + 1.0;
    auto head = [&](double t) { return H * kernel_ball_mass(space, omega, P, t, closed).value; };
    auto noise = [&](double t) {
      return 16.0 * std::numeric_limits<double>::epsilon() * scale * orthant_factor(space) * d *
             std::pow(t, -P.beta()) / P.beta();
    };
    const double target = 0.01 * std::max(spec.abs_tol, spec.rel_tol * head(s));
    auto below = [&](double t) { return head(t) <= std::max(target, noise(t)); };
    if (!below(s)) {
      double lo = std::log(s) - 700.0, hi = std::log(s);
      if (below(std::exp(lo))) {
        for (int i = 0; i < 200 && hi - lo > 1e-9; ++i) {
          const double mid = 0.5 * (lo + hi);
          (below(std::exp(mid)) ? lo : hi) = mid;
        }
        t0 = std::exp(lo);
        cutoff_error = head(t0);
        outer.abs_tol = std::max(spec.abs_tol, 4.0 * noise(t0));
        raw_breaks.push_back(t0);
      }
    }
  }
  std::vector<double> breaks = sorted_breaks(std::move(raw_breaks), 0.0, s);
  double inner_error = 0.0;
  auto integrand = [&](double t) {
    if (!(t > t0)) return 0.0;
    const Estimate e = shell_difference(f, space, x, t, spec);
    inner_error = std::max(inner_error, e.error_bound * P(t, d));
    return e.value * P(t, d);
  };
  Estimate singular = integrate_from_zero(integrand, s, k, outer, breaks);
  Estimate far = hypersingular_truncated(f, space, P, s, x, spec);
  return {singular.value + far.value, QuadratureMethod::Radial1D,
          singular.error_bound + far.error_bound + inner_error * s + cutoff_error};
}

double hypersingular_rhs(double holder_norm, double sup_norm, double A, double T) {
  if (!(holder_norm >= 0.0 && sup_norm >= 0.0 && A >= 0.0 && T >= 0.0))
    throw std::invalid_argument("hypersingular_rhs: inputs must be nonnegative");
  return holder_norm * A + 2.0 * sup_norm * T;
}

}  // namespace sharp
