#include "sharp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sharp/calculus.hpp"
#include "sharp/extremals.hpp"
#include "sharp/mixed.hpp"
#include "sharp/operators.hpp"
#include "sharp/report.hpp"
#include "sharp/rng.hpp"

namespace sharp {

namespace {

// Lattice trials sum finitely many doubles; only rounding separates them from
// exact arithmetic.
constexpr double kLatticeTrialTolerance = 1e-9;
// Continuum trials carry quadrature error from tolerances near 1e-9.
constexpr double kMixedTrialTolerance = 1e-7;

bool is_lattice_theorem(TheoremId id) {
  switch (id) {
    case TheoremId::Lemma1:
    case TheoremId::Nagy:
    case TheoremId::NagyL1:
    case TheoremId::Sobolev:
    case TheoremId::Charge:
      return true;
    default:
      return false;
  }
}

void check_space_for(TheoremId id, const Space& space) {
  if (is_lattice_theorem(id) && !space.is_lattice())
    throw std::invalid_argument("random suites for " + to_string(id) + " run on lattice spaces");
  if (!is_lattice_theorem(id) && space.is_lattice())
    throw std::invalid_argument("random suites for " + to_string(id) + " run on continuum spaces");
  if ((id == TheoremId::MixedAdditive || id == TheoremId::MixedMultiplicative) &&
      (space.dim() != 1 || space.half_dims() > 1))
    throw std::invalid_argument("random suites for mixed forms run on the continuum with d = 1");
}

Kernel suite_kernel(const Modulus& omega, const SuiteOptions& options) {
  return options.kernel ? *options.kernel : Kernel::power_law(0.5 * omega.exponent_at_zero());
}

/// Dense values of a compactly supported function on the lattice box
/// |x|_inf <= W with inclusive prefix sums, for O(2^d) box sums.
class LatticeGrid {
 public:
  LatticeGrid(const Space& space, std::int64_t W, const std::function<double(const Point&)>& f)
      : d_(space.dim()), m_(space.half_dims()), W_(W) {
    stride_.assign(d_, 1);
    extent_.assign(d_, 0);
    std::size_t total = 1;
    for (int i = d_ - 1; i >= 0; --i) {
      extent_[i] = static_cast<std::size_t>(i < m_ ? W + 1 : 2 * W + 1);
      stride_[i] = total;
      total *= extent_[i];
    }
    values_.resize(total);
    std::vector<double> c(d_);
    for (std::size_t n = 0; n < total; ++n) {
      for (int i = 0; i < d_; ++i) c[i] = static_cast<double>(low(i) + static_cast<std::int64_t>((n / stride_[i]) % extent_[i]));
      values_[n] = f(Point(c));
    }
    prefix_ = values_;
    for (int i = 0; i < d_; ++i)
      for (std::size_t n = 0; n < total; ++n)
        if ((n / stride_[i]) % extent_[i] > 0) prefix_[n] += prefix_[n - stride_[i]];
  }

  double value(const std::vector<std::int64_t>& x) const {
    std::size_t n = 0;
    for (int i = 0; i < d_; ++i) {
      if (x[i] < low(i) || x[i] > W_) return 0.0;
      n += static_cast<std::size_t>(x[i] - low(i)) * stride_[i];
    }
    return values_[n];
  }

  /// Sum over the box prod [lo_i, hi_i], clipped to the grid.
  double box_sum(std::vector<std::int64_t> lo, std::vector<std::int64_t> hi) const {
    for (int i = 0; i < d_; ++i) {
      lo[i] = std::max(lo[i], low(i));
      hi[i] = std::min(hi[i], W_);
      if (lo[i] > hi[i]) return 0.0;
    }
    double sum = 0.0;
    for (unsigned mask = 0; mask < (1u << d_); ++mask) {
      std::size_t n = 0;
      int sign = 1;
      bool skip = false;
      for (int i = 0; i < d_; ++i) {
        std::int64_t c = hi[i];
        if ((mask >> i) & 1u) {
          c = lo[i] - 1;
          sign = -sign;
          if (c < low(i)) {
            skip = true;
            break;
          }
        }
        n += static_cast<std::size_t>(c - low(i)) * stride_[i];
      }
      if (!skip) sum += sign * prefix_[n];
    }
    return sum;
  }

  std::int64_t low(int i) const { return i < m_ ? 0 : -W_; }

 private:
  int d_, m_;
  std::int64_t W_;
  std::vector<std::size_t> stride_, extent_;
  std::vector<double> values_, prefix_;
};

template <class F>
void for_each_index(const Space& space, std::int64_t r, F&& visit) {
  const int d = space.dim(), m = space.half_dims();
  std::vector<std::int64_t> x(d);
  for (int i = 0; i < d; ++i) x[i] = i < m ? 0 : -r;
  while (true) {
    visit(const_cast<const std::vector<std::int64_t>&>(x));
    int i = d - 1;
    for (; i >= 0; --i) {
      if (x[i] < r) {
        ++x[i];
        break;
      }
      x[i] = i < m ? 0 : -r;
    }
    if (i < 0) return;
  }
}

TrialResult lattice_trial(TheoremId id, const Space& space, const Modulus& omega, const ConeFunctionSpec& spec,
                          double h) {
  space.require_valid_radius(h);
  const double mass = static_cast<double>(space.ball_count(h));
  const double I = ball_integral_of_modulus(space, omega, h, QuadratureSpec{}).value;
  const double lambda = spec.slope;
  TrialResult r;
  r.h = h;
  double sup_f = 0.0, sem = 0.0, l1 = 0.0, dev = 0.0;
  if (spec.is_constant()) {
    if (id == TheoremId::NagyL1) throw std::invalid_argument("nagy_l1 trials need compact support");
    sup_f = std::fabs(spec.constant);
    sem = sup_f * mass;
  } else {
    const std::int64_t K = Space::lattice_radius(h);
    const auto R = static_cast<std::int64_t>(std::ceil(spec.support_radius(space)));
    const LatticeGrid grid(space, R + K + 1, [&](const Point& x) { return spec(space, omega, x); });
    const int d = space.dim(), m = space.half_dims();
    for_each_index(space, R + K, [&](const std::vector<std::int64_t>& x) {
      std::vector<std::int64_t> lo(d), hi(d);
      for (int i = 0; i < d; ++i) {
        lo[i] = i < m ? x[i] : x[i] - K;
        hi[i] = x[i] + K;
      }
      const double s = grid.box_sum(lo, hi);
      const double v = grid.value(x);
      sem = std::max(sem, std::fabs(s));
      dev = std::max(dev, std::fabs(v - s / mass));
      sup_f = std::max(sup_f, std::fabs(v));
      l1 += std::fabs(v);
    });
  }
  double t1 = lambda * I / mass, t2 = sem / mass;
  switch (id) {
    case TheoremId::Lemma1:
      r.lhs = dev;
      t2 = 0.0;
      break;
    case TheoremId::NagyL1:
      r.lhs = sup_f;
      t2 = l1 / mass;
      break;
    case TheoremId::Sobolev:  // upper gradient lambda/2
      r.lhs = sup_f;
      t1 = 2.0 * (0.5 * lambda) * I / mass;
      break;
    default:  // nagy; charge through nu(x + B_h) = ball sum of the density
      r.lhs = sup_f;
      break;
  }
  r.rhs = t1 + t2;
  r.gap = r.rhs - r.lhs;
  r.tolerance = kLatticeTrialTolerance * std::max({1.0, r.lhs, r.rhs});
  return r;
}

TrialResult hypersingular_trial(const Space& space, const Modulus& omega, const ConeFunctionSpec& spec, double h,
                                const SuiteOptions& options) {
  const Kernel P = suite_kernel(omega, options);
  const FunctionModel f = cone_model(spec, space, omega);
  std::vector<Point> probes{space.origin()};
  for (const Point& p : spec.centers) probes.push_back(p);
  TrialResult r;
  r.h = h;
  for (const Point& x : probes)
    r.lhs = std::max(r.lhs, std::fabs(hypersingular_full(f, space, omega, P, x, options.quadrature, h).value));
  const QuadratureSpec closed = options.quadrature.with_method(QuadratureMethod::Auto);
  const double A = kernel_ball_mass(space, omega, P, h, closed).value;
  const double T = kernel_tail_mass(space, P, h, closed).value;
  r.rhs = hypersingular_rhs(spec.slope, spec.sup_norm(), A, T);
  r.gap = r.rhs - r.lhs;
  r.tolerance = kQuadratureTolerance * std::max({1.0, r.lhs, r.rhs});
  return r;
}

TrialResult mixed_trial(TheoremId id, const Space& space, const Modulus& omega, const ConeFunctionSpec& spec,
                        double h, const SuiteOptions& options) {
  // d = 1: the mixed derivative of F is f itself. Taking the base point of
  // F = int_b^x f at the median of the mass of f gives ||F|| = ||f||_1 / 2.
  const int m = space.half_dims();
  const double R = spec.support_radius(space);
  std::vector<double> breaks;
  for (std::size_t i = 0; i < spec.centers.size(); ++i) {
    const double r0 = omega.inverse(spec.heights[i] / spec.slope);
    for (double k : {-spec.radii[i], -r0, 0.0, r0, spec.radii[i]}) breaks.push_back(spec.centers[i][0] + k);
  }
  auto f = [&](double t) { return std::fabs(spec(space, omega, Point{t})); };
  const double L = integrate_adaptive(f, m == 1 ? 0.0 : -R, R, options.quadrature, breaks).value;
  const double F = 0.5 * L;
  TrialResult r;
  r.h = h;
  r.lhs = spec.sup_norm();
  if (id == TheoremId::MixedAdditive) {
    r.rhs = mixed_nagy_rhs(1, m, omega, h, spec.slope, F, options.quadrature.with_method(QuadratureMethod::Auto));
  } else {
    if (!omega.is_power()) throw std::invalid_argument("mixed_multiplicative needs a power modulus");
    r.rhs = mixed_multiplicative_rhs(1, m, omega.alpha(), F, spec.slope);
  }
  r.gap = r.rhs - r.lhs;
  r.tolerance = kMixedTrialTolerance * std::max({1.0, r.lhs, r.rhs});
  return r;
}

}  // namespace

double ConeFunctionSpec::sup_norm() const {
  if (is_constant()) return std::fabs(constant);
  double s = 0.0;
  for (double c : heights) s = std::max(s, c);
  return s;
}

double ConeFunctionSpec::support_radius(const Space& space) const {
  double R = 0.0;
  for (std::size_t i = 0; i < centers.size(); ++i) R = std::max(R, space.norm(centers[i]) + radii[i]);
  return R;
}

double ConeFunctionSpec::operator()(const Space& space, const Modulus& omega, const Point& x) const {
  if (is_constant()) return constant;
  double best = 0.0;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    const double r = space.distance(x, centers[i]);
    if (r >= radii[i]) continue;
    best = std::max(best, heights[i] - slope * omega(r));
  }
  return sign * best;
}

ConeFunctionSpec ConeFunctionSpec::scaled(double factor) const {
  if (!(factor > 0.0)) throw std::invalid_argument("ConeFunctionSpec::scaled: factor must be positive");
  ConeFunctionSpec s = *this;
  s.slope *= factor;
  s.constant *= factor;
  for (double& c : s.heights) c *= factor;
  return s;
}

nlohmann::ordered_json ConeFunctionSpec::to_json() const {
  nlohmann::ordered_json j;
  auto centres = nlohmann::ordered_json::array();
  for (const Point& p : centers) centres.push_back(std::vector<double>(p.coords().begin(), p.coords().end()));
  j["centers"] = centres;
  j["heights"] = heights;
  j["radii"] = radii;
  j["slope"] = slope;
  j["sign"] = sign;
  j["constant"] = constant;
  return j;
}

FunctionModel cone_model(const ConeFunctionSpec& spec, const Space& space, const Modulus& omega) {
  FunctionModel f;
  f.evaluator = [spec, space, omega](const Point& x) { return spec(space, omega, x); };
  f.label = "cones";
  f.holder_bound = spec.slope;
  f.sup_norm = spec.sup_norm();
  f.upper_gradient_bound = 0.5 * spec.slope;
  if (spec.is_constant()) {
    f.far_value = spec.constant;
  } else {
    f.support_radius = spec.support_radius(space);
    f.kinks.clear();
    // Cone i vanishes from radius omega^{-1}(c_i / slope) < r_i on.
    for (std::size_t i = 0; i < spec.centers.size(); ++i) {
      const double r0 = omega.inverse(spec.heights[i] / spec.slope);
      for (std::size_t j = 0; j < spec.centers[i].dim(); ++j)
        for (double k : {-spec.radii[i], -r0, 0.0, r0, spec.radii[i]}) f.kinks.push_back(spec.centers[i][j] + k);
    }
    std::sort(f.kinks.begin(), f.kinks.end());
    f.kinks.erase(std::unique(f.kinks.begin(), f.kinks.end()), f.kinks.end());
  }
  return f;
}

ConeFunctionSpec random_cone_spec(TheoremId id, const Space& space, const Modulus& omega, std::uint64_t seed,
                                  std::uint64_t trial, const SuiteOptions& options) {
  const CounterRng rng(seed, trial);
  std::uint64_t k = 0;
  auto u = [&] { return rng.uniform(k++); };
  ConeFunctionSpec s;
  s.sign = u() < 0.5 ? -1.0 : 1.0;
  const bool constants_ok = options.allow_constants && is_lattice_theorem(id) && id != TheoremId::NagyL1;
  if (constants_ok && u() < 0.1) {
    s.slope = 0.0;
    s.constant = 2.0 * u() - 1.0;
    return s;
  }
  s.slope = 0.1 + 1.9 * u();
  const int n = 1 + static_cast<int>(rng.below(k++, static_cast<std::uint64_t>(std::max(1, options.max_cones))));
  const double C = options.center_range;
  for (int i = 0; i < n; ++i) {
    std::vector<double> c(space.dim());
    for (int j = 0; j < space.dim(); ++j) {
      const double lo = j < space.half_dims() ? 0.0 : -C;
      c[j] = lo + (C - lo) * u();
      if (space.is_lattice()) c[j] = std::round(c[j]);
    }
    s.centers.emplace_back(std::move(c));
    const double r = options.min_radius + (options.max_radius - options.min_radius) * u();
    s.radii.push_back(r);
    s.heights.push_back(s.slope * omega(r) * (0.2 + 0.8 * u()));
  }
  return s;
}

TrialResult evaluate_trial(TheoremId id, const Space& space, const Modulus& omega, const ConeFunctionSpec& spec,
                           double h, const SuiteOptions& options) {
  check_space_for(id, space);
  if (is_lattice_theorem(id)) return lattice_trial(id, space, omega, spec, h);
  if (spec.is_constant()) throw std::invalid_argument("continuum trials need a nonconstant cone function");
  if (id == TheoremId::Hypersingular) return hypersingular_trial(space, omega, spec, h, options);
  return mixed_trial(id, space, omega, spec, h, options);
}

nlohmann::ordered_json SuiteReport::to_json() const {
  nlohmann::ordered_json j;
  j["theorem_id"] = theorem_id;
  j["trials"] = trials;
  j["min_gap"] = min_gap;
  j["violations"] = violations;
  j["worst_case_spec"] = worst_case_spec;
  j["seed"] = seed;
  return j;
}

SuiteReport random_suite(TheoremId id, const Space& space, const Modulus& omega, std::span<const double> h_values,
                         std::size_t trials, std::uint64_t seed, const SuiteOptions& options) {
  if (trials == 0) throw std::invalid_argument("random_suite: trials must be >= 1");
  if (h_values.empty()) throw std::invalid_argument("random_suite: h list must be nonempty");
  check_space_for(id, space);
  for (double h : h_values) space.require_valid_radius(h);
  SuiteReport report;
  report.theorem_id = to_string(id);
  report.trials = trials;
  report.seed = seed;
  report.min_gap = std::numeric_limits<double>::infinity();
  // The h choice uses its own stream so trial specs do not depend on the h list.
  const CounterRng pick_h(seed, 0xffffffffULL);
  for (std::size_t t = 0; t < trials; ++t) {
    const ConeFunctionSpec spec = random_cone_spec(id, space, omega, seed, t, options);
    const double h = h_values[pick_h.below(t, h_values.size())];
    const TrialResult r = evaluate_trial(id, space, omega, spec, h, options);
    if (r.violated()) ++report.violations;
    if (r.gap < report.min_gap) {
      report.min_gap = r.gap;
      report.worst_case_spec = spec.to_json();
      report.worst_case_spec["h"] = h;
      report.worst_case_spec["trial"] = t;
      report.worst_case_spec["lhs"] = r.lhs;
      report.worst_case_spec["rhs"] = r.rhs;
    }
  }
  return report;
}

nlohmann::ordered_json AgreementReport::to_json() const {
  nlohmann::ordered_json j;
  j["op_id"] = op_id;
  j["deterministic"] = deterministic;
  j["monte_carlo"] = monte_carlo;
  j["standard_error"] = standard_error;
  j["agree"] = agree;
  return j;
}

const std::vector<std::string>& cross_check_ops() {
  static const std::vector<std::string> ops{"ball_integral",    "radial_table",     "lattice_ball_integral",
                                            "kernel_ball_mass", "kernel_tail_mass", "steklov_average",
                                            "split_point"};
  return ops;
}

AgreementReport mc_cross_check(const std::string& op_id, const CrossCheckParams& p, std::size_t samples,
                               std::uint64_t seed) {
  QuadratureSpec det;
  QuadratureSpec mc;
  mc.method = QuadratureMethod::MonteCarlo;
  mc.mc_samples = samples;
  mc.seed = seed;
  AgreementReport r;
  r.op_id = op_id;
  Estimate a, b;
  if (op_id == "ball_integral" || op_id == "lattice_ball_integral" || op_id == "radial_table") {
    if (op_id == "lattice_ball_integral" && !p.space.is_lattice())
      throw std::invalid_argument("lattice_ball_integral needs a lattice space");
    if (op_id == "radial_table") {
      if (p.omega.is_power() || p.space.is_lattice())
        throw std::invalid_argument("radial_table needs a table modulus on a continuum space");
      det.method = QuadratureMethod::Radial1D;
    }
    a = ball_integral_of_modulus(p.space, p.omega, p.h, det);
    b = ball_integral_of_modulus(p.space, p.omega, p.h, mc);
  } else if (op_id == "kernel_ball_mass" || op_id == "kernel_tail_mass") {
    const Kernel P = p.kernel ? *p.kernel : Kernel::power_law(0.5);
    if (op_id == "kernel_ball_mass") {
      a = kernel_ball_mass(p.space, p.omega, P, p.h, det);
      b = kernel_ball_mass(p.space, p.omega, P, p.h, mc);
    } else {
      a = kernel_tail_mass(p.space, P, p.h, det);
      b = kernel_tail_mass(p.space, P, p.h, mc);
    }
  } else if (op_id == "steklov_average") {
    const FunctionModel f = make_f_eh(p.space, p.omega, p.h);
    const Point x = p.x ? *p.x : p.space.origin();
    const double mass = ball_mass(p.space, p.h);
    a = ball_integral_at(f, p.space, p.h, x, det);
    b = ball_integral_at(f, p.space, p.h, x, mc);
    a.value /= mass;
    b.value /= mass;
    b.error_bound /= mass;
  } else if (op_id == "split_point") {
    const int d = p.space.dim();
    const Space half = Space::continuum(d, 1);
    const double a_split = split_point_a(p.omega, p.h, d).a;
    const double wh = p.omega(p.h);
    a = {0.5 * split_objective(p.omega, p.h, d, p.h), QuadratureMethod::ClosedForm, 0.0};
    RunningStats stats;
    for (std::size_t i = 0; i < samples; ++i) {
      const Point u = half.sample_ball_point(p.h, seed, i);
      stats.add(u[0] < a_split ? wh - p.omega(half.norm(u)) : 0.0);
    }
    const double mass = half.ball_measure(p.h);
    b = {mass * stats.mean(), QuadratureMethod::MonteCarlo, mass * stats.standard_error()};
  } else {
    throw std::invalid_argument("mc_cross_check: unknown operation " + op_id);
  }
  r.deterministic = a.value;
  r.monte_carlo = b.value;
  r.standard_error = b.error_bound;
  const double diff = std::fabs(a.value - b.value);
  r.agree = b.error_bound > 0.0 ? diff <= 4.0 * b.error_bound : diff <= 1e-12 * std::max(1.0, std::fabs(a.value));
  return r;
}

}  // namespace sharp
