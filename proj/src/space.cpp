#include "sharp/space.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sharp/rng.hpp"

namespace sharp {

std::string to_string(SpaceKind kind) {
  return kind == SpaceKind::Continuum ? "continuum" : "lattice";
}

Space::Space(SpaceKind kind, int d, int m) : kind_(kind), d_(d), m_(m) {
  if (d < 1) throw std::invalid_argument("Space: dimension must be positive");
  if (m < 0 || m > d) throw std::invalid_argument("Space: need 0 <= m <= d");
}

Space Space::continuum(int d, int m) { return Space(SpaceKind::Continuum, d, m); }
Space Space::lattice(int d, int m) { return Space(SpaceKind::Lattice, d, m); }

Point Space::origin() const { return Point(std::vector<double>(static_cast<std::size_t>(d_), 0.0)); }

Point Space::point(std::vector<double> coords) const {
  Point p(std::move(coords));
  require_same_dim(p);
  for (int i = 0; i < d_; ++i) {
    if (!std::isfinite(p[i])) throw std::invalid_argument("Space::point: non-finite coordinate");
    if (i < m_ && p[i] < 0.0)
      throw std::invalid_argument("Space::point: half-line coordinate must be nonnegative");
    if (is_lattice() && p[i] != std::round(p[i]))
      throw std::invalid_argument("Space::point: lattice coordinates must be integers");
  }
  return p;
}

bool Space::contains(const Point& x) const noexcept {
  if (x.dim() != static_cast<std::size_t>(d_)) return false;
  for (int i = 0; i < d_; ++i) {
    if (!std::isfinite(x[i])) return false;
    if (i < m_ && x[i] < 0.0) return false;
    if (is_lattice() && x[i] != std::round(x[i])) return false;
  }
  return true;
}

void Space::require_same_dim(const Point& x) const {
  if (x.dim() != static_cast<std::size_t>(d_))
    throw std::invalid_argument("Space: point dimension " + std::to_string(x.dim()) +
                                " does not match space dimension " + std::to_string(d_));
}

double Space::distance(const Point& x, const Point& y) const {
  require_same_dim(x);
  require_same_dim(y);
  double r = 0.0;
  for (int i = 0; i < d_; ++i) r = std::max(r, std::fabs(x[i] - y[i]));
  return r;
}

double Space::norm(const Point& x) const {
  require_same_dim(x);
  double r = 0.0;
  for (int i = 0; i < d_; ++i) r = std::max(r, std::fabs(x[i]));
  return r;
}

Point Space::translate(const Point& x, const Point& y) const {
  require_same_dim(x);
  require_same_dim(y);
  std::vector<double> s(static_cast<std::size_t>(d_));
  for (int i = 0; i < d_; ++i) s[static_cast<std::size_t>(i)] = x[i] + y[i];
  return Point(std::move(s));
}

void Space::require_valid_radius(double h) const {
  if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("ball radius must be positive and finite");
  // On Z^d the open ball of radius <= 1 is {theta}, which the theory excludes.
  if (is_lattice() && h <= 1.0)
    throw std::invalid_argument("lattice ball radius must exceed 1 (B_h would be {theta})");
}

std::int64_t Space::lattice_radius(double h) { return static_cast<std::int64_t>(std::ceil(h)) - 1; }

std::int64_t Space::ball_count(double h) const {
  if (!is_lattice()) throw std::invalid_argument("ball_count: lattice spaces only");
  require_valid_radius(h);
  const std::int64_t k = lattice_radius(h);
  std::int64_t n = 1;
  for (int i = 0; i < d_; ++i) n *= (i < m_) ? (k + 1) : (2 * k + 1);
  return n;
}

double Space::ball_measure(double h) const {
  require_valid_radius(h);
  if (is_lattice()) return static_cast<double>(ball_count(h));
  return std::ldexp(std::pow(h, d_), d_ - m_);
}

double Space::shell_area(double t) const {
  if (is_lattice()) throw std::invalid_argument("shell_area: continuum spaces only");
  return std::ldexp(d_ * std::pow(t, d_ - 1), d_ - m_);
}

std::vector<Point> Space::enumerate_ball(double h) const {
  if (!is_lattice()) throw std::invalid_argument("enumerate_ball: continuum balls are not finite; use sample_ball");
  require_valid_radius(h);
  const std::int64_t k = lattice_radius(h);
  std::vector<std::int64_t> lo(static_cast<std::size_t>(d_)), idx(static_cast<std::size_t>(d_));
  for (int i = 0; i < d_; ++i) lo[static_cast<std::size_t>(i)] = (i < m_) ? 0 : -k;
  idx = lo;

  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(ball_count(h)));
  while (true) {
    out.emplace_back(std::vector<double>(idx.begin(), idx.end()));
    int i = d_ - 1;
    for (; i >= 0; --i) {
      auto& c = idx[static_cast<std::size_t>(i)];
      if (c < k) {
        ++c;
        break;
      }
      c = lo[static_cast<std::size_t>(i)];
    }
    if (i < 0) break;
  }
  return out;
}

Point Space::sample_ball_point(double h, std::uint64_t seed, std::uint64_t index) const {
  const CounterRng rng(seed, 0x5a3b1e);
  std::vector<double> c(static_cast<std::size_t>(d_));
  const auto base = index * static_cast<std::uint64_t>(d_);
  if (is_lattice()) {
    const auto k = static_cast<std::uint64_t>(lattice_radius(h));
    for (int i = 0; i < d_; ++i) {
      const auto j = base + static_cast<std::uint64_t>(i);
      c[static_cast<std::size_t>(i)] =
          (i < m_) ? static_cast<double>(rng.below(j, k + 1))
                   : static_cast<double>(static_cast<std::int64_t>(rng.below(j, 2 * k + 1)) -
                                         static_cast<std::int64_t>(k));
    }
  } else {
    for (int i = 0; i < d_; ++i) {
      const double u = rng.uniform(base + static_cast<std::uint64_t>(i));
      c[static_cast<std::size_t>(i)] = (i < m_) ? u * h : (2.0 * u - 1.0) * h;
    }
  }
  return Point(std::move(c));
}

std::vector<Point> Space::sample_ball(double h, std::size_t n, std::uint64_t seed) const {
  if (n == 0) throw std::invalid_argument("sample_ball: need at least one sample");
  require_valid_radius(h);
  std::vector<Point> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(sample_ball_point(h, seed, i));
  return out;
}

std::string describe(const Space& space) {
  return to_string(space.kind()) + "(d=" + std::to_string(space.dim()) +
         ",m=" + std::to_string(space.half_dims()) + ")";
}

}  // namespace sharp
