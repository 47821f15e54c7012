#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sharp/errors.hpp"

namespace sharp {

enum class QuadratureMethod { Auto, ClosedForm, Radial1D, MonteCarlo, LatticeExact };

std::string to_string(QuadratureMethod method);
QuadratureMethod parse_quadrature_method(const std::string& name);

struct QuadratureSpec {
  QuadratureMethod method = QuadratureMethod::Auto;
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  std::size_t mc_samples = 100000;
  std::uint64_t seed = 1;
  std::size_t max_evals = 1'000'000;
  /// Sup searches step at most h / grid_divisions.
  int grid_divisions = 64;

  void validate() const;
  QuadratureSpec with_method(QuadratureMethod m) const {
    QuadratureSpec s = *this;
    s.method = m;
    return s;
  }
};

/// A numeric value with the route that produced it. For MonteCarlo the error
/// bound is one standard error; for deterministic quadrature it is the summed
/// local Richardson estimate; closed forms and exact sums report 0.
struct Estimate {
  double value = 0.0;
  QuadratureMethod method = QuadratureMethod::ClosedForm;
  double error_bound = 0.0;
};

namespace detail {

struct SimpsonBudget {
  std::size_t evals = 0;
  std::size_t max_evals = 0;
  double error = 0.0;

  void charge(std::size_t n) {
    evals += n;
    if (evals > max_evals)
      throw NumericFailure("adaptive quadrature exceeded its budget of " + std::to_string(max_evals) + " evaluations");
  }
};

constexpr int kMaxSimpsonDepth = 48;

template <class F>
double simpson_step(F& f, double a, double fa, double m, double fm, double b, double fb, double whole,
                    double tol, int depth, SimpsonBudget& budget) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  budget.charge(2);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double sum = left + right;
  const double delta = sum - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol || std::fabs(delta) <= 1e-15 * std::fabs(sum) ||
      !(a < lm && lm < m && m < rm && rm < b)) {
    budget.error += std::fabs(delta) / 15.0;
    return sum + delta / 15.0;
  }
  return simpson_step(f, a, fa, lm, flm, m, fm, left, 0.5 * tol, depth - 1, budget) +
         simpson_step(f, m, fm, rm, frm, b, fb, right, 0.5 * tol, depth - 1, budget);
}

}  // namespace detail

/// Bisection-refined adaptive Simpson on [a, b], split first at the given
/// breakpoints (kinks of the integrand). Tolerance is max(abs_tol, rel_tol *
/// |coarse estimate|). Throws NumericFailure when the evaluation budget runs out.
template <class F>
Estimate integrate_adaptive(F&& f, double a, double b, const QuadratureSpec& spec,
                            std::span<const double> breakpoints = {}) {
  if (!(a <= b)) throw std::invalid_argument("integrate_adaptive: need a <= b");
  if (a == b) return {0.0, QuadratureMethod::Radial1D, 0.0};
  std::vector<double> cuts{a};
  for (double c : breakpoints)
    if (c > a && c < b) cuts.push_back(c);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  detail::SimpsonBudget budget{0, spec.max_evals, 0.0};
  struct Piece {
    double a, fa, m, fm, b, fb, whole;
  };
  std::vector<Piece> pieces;
  double coarse = 0.0;
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    const double lo = cuts[i - 1], hi = cuts[i], mid = 0.5 * (lo + hi);
    const double flo = f(lo), fmid = f(mid), fhi = f(hi);
    budget.charge(3);
    const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    pieces.push_back({lo, flo, mid, fmid, hi, fhi, whole});
    coarse += whole;
  }
  const double tol = std::max(spec.abs_tol, spec.rel_tol * std::fabs(coarse));
  double total = 0.0;
  for (const auto& p : pieces) {
    const double share = tol * (p.b - p.a) / (b - a);
    total += detail::simpson_step(f, p.a, p.fa, p.m, p.fm, p.b, p.fb, p.whole, share, detail::kMaxSimpsonDepth,
                                  budget);
  }
  if (!std::isfinite(total)) throw NumericFailure("adaptive quadrature produced a non-finite value");
  return {total, QuadratureMethod::Radial1D, budget.error};
}

/// Integral of g over the box prod [lo_i, hi_i] by nested adaptive Simpson.
/// `breaks[i]` (optional) lists kink locations along coordinate i.
Estimate integrate_box(const std::function<double(std::span<const double>)>& g, std::span<const double> lo,
                       std::span<const double> hi, const QuadratureSpec& spec,
                       const std::vector<std::vector<double>>& breaks = {});

/// Mean and standard error of a sample, accumulated with Welford's update.
class RunningStats {
 public:
  void add(double x) noexcept {
    ++n_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_);
  }
  std::size_t count() const noexcept { return n_; }
  double mean() const noexcept { return mean_; }
  double variance() const noexcept { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }
  double standard_error() const noexcept { return n_ > 1 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0; }

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

}  // namespace sharp
