#include "sharp/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace sharp {

namespace {

// Relative slack for the pairwise axiom checks; table values come from
// linear interpolation and rounding of order 1 ulp is expected.
constexpr double kAxiomSlack = 1e-12;

void check_table_shape(const std::vector<std::pair<double, double>>& pts) {
  if (pts.size() < 2) throw std::invalid_argument("Modulus::table: need at least two points");
  if (pts.front().first != 0.0 || pts.front().second != 0.0)
    throw std::invalid_argument("Modulus::table: first point must be (0, 0)");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto [t, w] = pts[i];
    if (!std::isfinite(t) || !std::isfinite(w))
      throw std::invalid_argument("Modulus::table: non-finite breakpoint");
    if (w < 0.0) throw std::invalid_argument("Modulus::table: negative value");
    if (i > 0 && !(t > pts[i - 1].first))
      throw std::invalid_argument("Modulus::table: breakpoints must be strictly increasing");
  }
}

}  // namespace

Modulus Modulus::power(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("Modulus::power: alpha must lie in (0, 1]");
  Modulus w;
  w.kind_ = Kind::Power;
  w.alpha_ = alpha;
  return w;
}

Modulus Modulus::table_unchecked(std::vector<std::pair<double, double>> points) {
  check_table_shape(points);
  Modulus w;
  w.kind_ = Kind::Table;
  w.points_ = std::move(points);
  return w;
}

Modulus Modulus::table(std::vector<std::pair<double, double>> points) {
  Modulus w = table_unchecked(std::move(points));
  for (std::size_t i = 1; i < w.points_.size(); ++i)
    if (w.points_[i].second < w.points_[i - 1].second)
      throw std::invalid_argument("Modulus::table: values must be nondecreasing");
  if (!w.is_concave()) throw std::invalid_argument("Modulus::table: values must be concave");
  return w;
}

bool Modulus::is_concave() const {
  if (kind_ == Kind::Power) return true;
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < points_.size(); ++i) {
    const double slope = (points_[i].second - points_[i - 1].second) / (points_[i].first - points_[i - 1].first);
    if (slope > prev * (1.0 + kAxiomSlack) + kAxiomSlack) return false;
    prev = slope;
  }
  // The constant tail has slope 0, so the last segment must not decrease.
  return prev >= 0.0;
}

double Modulus::operator()(double t) const {
  if (!(t >= 0.0)) throw std::invalid_argument("Modulus: argument must be nonnegative");
  if (kind_ == Kind::Power) {
    if (alpha_ == 1.0) return t;
    if (alpha_ == 0.5) return std::sqrt(t);
    return std::pow(t, alpha_);
  }
  if (t >= points_.back().first) return points_.back().second;
  const auto it = std::upper_bound(points_.begin(), points_.end(), t,
                                   [](double v, const auto& p) { return v < p.first; });
  const auto& [t1, w1] = *it;
  const auto& [t0, w0] = *(it - 1);
  return w0 + (w1 - w0) * ((t - t0) / (t1 - t0));
}

double Modulus::moment(int k, double a, double b) const {
  if (k < 0) throw std::invalid_argument("Modulus::moment: k must be nonnegative");
  if (!(a >= 0.0 && b >= a)) throw std::invalid_argument("Modulus::moment: need 0 <= a <= b");
  if (a == b) return 0.0;
  if (kind_ == Kind::Power) {
    const double p = alpha_ + k + 1.0;
    return (std::pow(b, p) - std::pow(a, p)) / p;
  }
  // On each linear piece omega(t) = c0 + c1 t.
  auto piece = [k](double c0, double c1, double lo, double hi) {
    const double k1 = k + 1.0, k2 = k + 2.0;
    return c0 * (std::pow(hi, k1) - std::pow(lo, k1)) / k1 + c1 * (std::pow(hi, k2) - std::pow(lo, k2)) / k2;
  };
  double sum = 0.0;
  for (std::size_t i = 1; i < points_.size(); ++i) {
    const auto [t0, w0] = points_[i - 1];
    const auto [t1, w1] = points_[i];
    const double lo = std::max(a, t0), hi = std::min(b, t1);
    if (lo >= hi) continue;
    const double slope = (w1 - w0) / (t1 - t0);
    sum += piece(w0 - slope * t0, slope, lo, hi);
  }
  const double tail = points_.back().first;
  if (b > tail) sum += piece(points_.back().second, 0.0, std::max(a, tail), b);
  return sum;
}

double Modulus::inverse(double y) const {
  if (y <= 0.0) return 0.0;
  if (kind_ == Kind::Power) return std::pow(y, 1.0 / alpha_);
  if (y > points_.back().second) return std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < points_.size(); ++i) {
    const auto [t0, w0] = points_[i - 1];
    const auto [t1, w1] = points_[i];
    if (w1 >= y) return (w1 == w0) ? t0 : t0 + (y - w0) * (t1 - t0) / (w1 - w0);
  }
  return points_.back().first;
}

ModulusValidation Modulus::validate(std::span<const double> grid) const {
  if (grid.empty()) throw std::invalid_argument("Modulus::validate: grid must be nonempty");
  ModulusValidation report;
  using K = ModulusViolation::Kind;
  if ((*this)(0.0) != 0.0) report.violations.push_back({K::NonZeroAtOrigin, 0.0, 0.0, (*this)(0.0)});

  std::vector<double> g(grid.begin(), grid.end());
  for (double t : g)
    if (!(t >= 0.0)) throw std::invalid_argument("Modulus::validate: grid points must be nonnegative");
  std::sort(g.begin(), g.end());

  for (std::size_t i = 0; i < g.size(); ++i) {
    const double wi = (*this)(g[i]);
    if (wi < 0.0) report.violations.push_back({K::Negative, g[i], g[i], -wi});
    if (i > 0) {
      const double prev = (*this)(g[i - 1]);
      if (wi < prev) report.violations.push_back({K::Decreasing, g[i - 1], g[i], prev - wi});
    }
  }
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i; j < g.size(); ++j) {
      const double lhs = (*this)(g[i] + g[j]);
      const double rhs = (*this)(g[i]) + (*this)(g[j]);
      if (lhs > rhs + kAxiomSlack * std::max(1.0, rhs))
        report.violations.push_back({K::NotSemiAdditive, g[i], g[j], lhs - rhs});
    }
  }
  return report;
}

std::string Modulus::label() const {
  std::ostringstream os;
  os.precision(12);
  if (kind_ == Kind::Power) {
    os << alpha_;
    return os.str();
  }
  os << "table";
  for (const auto& [t, w] : points_) os << ':' << t << '/' << w;
  return os.str();
}

}  // namespace sharp
