#include "sharp/theorems.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "sharp/calculus.hpp"
#include "sharp/extremals.hpp"
#include "sharp/mixed.hpp"
#include "sharp/operators.hpp"

namespace sharp {

namespace {

constexpr std::array<TheoremId, 8> kAll = {TheoremId::Lemma1,        TheoremId::Nagy,
                                           TheoremId::NagyL1,        TheoremId::Sobolev,
                                           TheoremId::Charge,        TheoremId::Hypersingular,
                                           TheoremId::MixedAdditive, TheoremId::MixedMultiplicative};

double tolerance_for(const Space& space, const Modulus& omega, const QuadratureSpec& spec) {
  const QuadratureMethod m = resolve_method(space, omega, spec.method);
  return (m == QuadratureMethod::ClosedForm || m == QuadratureMethod::LatticeExact) ? kClosedFormTolerance
                                                                                     : kQuadratureTolerance;
}

InequalityReport blank(TheoremId id, const Space& space, const Modulus& omega, double h) {
  InequalityReport r;
  r.theorem_id = to_string(id);
  r.d = space.dim();
  r.m = space.half_dims();
  r.modulus = omega.label();
  r.h = h;
  return r;
}

void require_continuum(const Space& space, TheoremId id) {
  if (space.is_lattice()) throw std::invalid_argument(to_string(id) + " is verified on continuum spaces only");
}

}  // namespace

std::string to_string(TheoremId id) {
  switch (id) {
    case TheoremId::Lemma1: return "lemma1";
    case TheoremId::Nagy: return "nagy";
    case TheoremId::NagyL1: return "nagy_l1";
    case TheoremId::Sobolev: return "sobolev";
    case TheoremId::Charge: return "charge";
    case TheoremId::Hypersingular: return "hypersingular";
    case TheoremId::MixedAdditive: return "mixed_additive";
    case TheoremId::MixedMultiplicative: return "mixed_multiplicative";
  }
  return "?";
}

TheoremId parse_theorem_id(const std::string& name) {
  for (TheoremId id : kAll)
    if (to_string(id) == name) return id;
  throw std::invalid_argument("unknown theorem_id: " + name);
}

const std::array<TheoremId, 8>& all_theorems() { return kAll; }

InequalityReport verify_extremal(TheoremId id, const Space& space, const Modulus& omega, double h,
                                 const VerifyOptions& options) {
  const QuadratureSpec& spec = options.quadrature;
  spec.validate();
  space.require_valid_radius(h);
  InequalityReport r = blank(id, space, omega, h);
  r.equality_expected = true;
  const Point theta = space.origin();
  double rel_tol = tolerance_for(space, omega, spec);

  switch (id) {
    case TheoremId::Lemma1: {
      const FunctionModel f = make_f_omega(space, omega, 0.0, +1);
      const FunctionModel s = steklov_average(f, space, h, spec);
      r.lhs = std::fabs(f(theta) - s(theta));
      r.rhs_term1 = ostrowski_bound(space, omega, h, *f.holder_bound, spec);
      break;
    }
    case TheoremId::Nagy:
    case TheoremId::NagyL1:
    case TheoremId::Sobolev: {
      const auto [f, gradient] = sobolev_extremal_pair(space, omega, h);
      const double mass = ball_mass(space, h);
      r.lhs = std::fabs(f(theta));
      if (id == TheoremId::Sobolev) {
        r.rhs_term1 = 2.0 * gradient * deviation_u(space, omega, h, spec);
        r.rhs_term2 = f.seminorm->value / mass;
      } else {
        r.rhs_term1 = ostrowski_bound(space, omega, h, *f.holder_bound, spec);
        r.rhs_term2 = (id == TheoremId::Nagy ? f.seminorm->value : *f.l1_norm) / mass;
      }
      break;
    }
    case TheoremId::Charge: {
      const ChargeModel nu{make_f_eh(space, omega, h)};
      const double mass = ball_mass(space, h);
      // |nu(x + B_h)| peaks at x = theta for this density.
      const double charge_h = std::fabs(charge_of_ball(nu, space, h, theta, spec).value);
      r.lhs = std::fabs(nu.density(theta));
      r.rhs_term1 = ostrowski_bound(space, omega, h, *nu.density.holder_bound, spec);
      r.rhs_term2 = charge_h / mass;
      break;
    }
    case TheoremId::Hypersingular: {
      require_continuum(space, id);
      const FunctionModel f = make_f_e_omega(space, omega, h);
      const Estimate value = hypersingular_full(f, space, omega, options.kernel, theta, spec, options.split_radius);
      const QuadratureSpec auto_spec = spec.with_method(QuadratureMethod::Auto);
      const double A = kernel_ball_mass(space, omega, options.kernel, h, auto_spec).value;
      const double T = kernel_tail_mass(space, options.kernel, h, auto_spec).value;
      r.lhs = std::fabs(value.value);
      r.rhs_term1 = *f.holder_bound * A;
      r.rhs_term2 = 2.0 * *f.sup_norm * T;
      rel_tol = kQuadratureTolerance;
      r.note = "kernel " + options.kernel.label() + "; f_e_omega is continuous because omega is";
      break;
    }
    case TheoremId::MixedAdditive:
    case TheoremId::MixedMultiplicative: {
      require_continuum(space, id);
      const int d = space.dim(), m = space.half_dims();
      if (id == TheoremId::MixedMultiplicative && !omega.is_power())
        throw std::invalid_argument("mixed_multiplicative needs a power modulus");
      const FunctionModel F = m == 0 ? make_g_eh(omega, h, d)
                              : m == 1 ? make_G_eh(omega, h, d)
                                       : make_orthant_primitive(omega, h, d, m);
      const double holder = *F.mixed_derivative->holder_bound;
      r.lhs = std::fabs((*F.mixed_derivative)(theta));
      r.equality_expected = m <= 1;
      if (id == TheoremId::MixedAdditive) {
        const double I = ball_integral_of_modulus(space, omega, h, spec).value;
        r.rhs_term1 = holder * I / space.ball_measure(h);
        r.rhs_term2 = std::ldexp(1.0, m) * *F.sup_norm / std::pow(h, d);
      } else {
        const double a = omega.alpha();
        r.rhs_term1 = mixed_multiplicative_rhs(d, m, a, *F.sup_norm, holder);
        std::ostringstream os;
        os.precision(12);
        os << "optimal h " << optimal_h(d, m, a, *F.sup_norm, holder);
        r.note = os.str();
      }
      if (m >= 2) r.note += (r.note.empty() ? "" : "; ") + std::string("no extremal known for m >= 2");
      break;
    }
  }
  settle(r, rel_tol);
  return r;
}

}  // namespace sharp
