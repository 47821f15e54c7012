#include "sharp/quadrature.hpp"

#include <stdexcept>

namespace sharp {

std::string to_string(QuadratureMethod method) {
  switch (method) {
    case QuadratureMethod::Auto: return "auto";
    case QuadratureMethod::ClosedForm: return "closed_form";
    case QuadratureMethod::Radial1D: return "radial1d";
    case QuadratureMethod::MonteCarlo: return "monte_carlo";
    case QuadratureMethod::LatticeExact: return "lattice_exact";
  }
  return "unknown";
}

QuadratureMethod parse_quadrature_method(const std::string& name) {
  for (auto m : {QuadratureMethod::Auto, QuadratureMethod::ClosedForm, QuadratureMethod::Radial1D,
                 QuadratureMethod::MonteCarlo, QuadratureMethod::LatticeExact})
    if (to_string(m) == name) return m;
  throw std::invalid_argument("unknown quadrature method '" + name + "'");
}

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw std::invalid_argument("QuadratureSpec: tolerances must be positive");
  if (mc_samples == 0) throw std::invalid_argument("QuadratureSpec: mc_samples must be positive");
  if (max_evals == 0) throw std::invalid_argument("QuadratureSpec: max_evals must be positive");
  if (grid_divisions < 1) throw std::invalid_argument("QuadratureSpec: grid_divisions must be positive");
}

namespace {

struct BoxIntegrator {
  const std::function<double(std::span<const double>)>& g;
  std::span<const double> lo, hi;
  const QuadratureSpec& spec;
  const std::vector<std::vector<double>>& breaks;
  std::vector<double> x;
  double error = 0.0;

  double level(std::size_t i) {
    if (i == x.size()) return g(x);
    std::span<const double> cuts;
    if (i < breaks.size()) cuts = breaks[i];
    auto inner = [this, i](double t) {
      x[i] = t;
      return level(i + 1);
    };
    const Estimate e = integrate_adaptive(inner, lo[i], hi[i], spec, cuts);
    error += e.error_bound;
    return e.value;
  }
};

}  // namespace

Estimate integrate_box(const std::function<double(std::span<const double>)>& g, std::span<const double> lo,
                       std::span<const double> hi, const QuadratureSpec& spec,
                       const std::vector<std::vector<double>>& breaks) {
  if (lo.size() != hi.size() || lo.empty()) throw std::invalid_argument("integrate_box: bad box");
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (!(lo[i] <= hi[i])) throw std::invalid_argument("integrate_box: need lo <= hi");
  BoxIntegrator it{g, lo, hi, spec, breaks, std::vector<double>(lo.size()), 0.0};
  const double v = it.level(0);
  return {v, QuadratureMethod::Radial1D, it.error};
}

}  // namespace sharp
