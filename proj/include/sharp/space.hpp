#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace sharp {

enum class SpaceKind { Continuum, Lattice };

std::string to_string(SpaceKind kind);

/// A point of R^m_+ x R^{d-m} (or of the integer lattice of the same shape).
/// Lattice points store integral doubles so both families share evaluators.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords) : coords_(std::move(coords)) {}
  Point(std::initializer_list<double> coords) : coords_(coords) {}

  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  double& operator[](std::size_t i) { return coords_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }

  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<double> coords_;
};

/// Metric measure monoid with the sup-norm metric.
///
/// Continuum: R^m_+ x R^{d-m} with Lebesgue measure. Lattice: Z^m_+ x Z^{d-m}
/// with counting measure. The monoid operation is coordinatewise addition and
/// the neutral element is the origin. Balls are open: B_h = {x : |x|_inf < h}.
///
/// Everything above this class talks to a space only through distance,
/// translate, ball_measure, enumerate_ball and sample_ball, so another
/// translation-invariant metric can be dropped in here without touching the
/// operator code.
class Space {
 public:
  static Space continuum(int d, int m = 0);
  static Space lattice(int d, int m = 0);

  SpaceKind kind() const noexcept { return kind_; }
  bool is_lattice() const noexcept { return kind_ == SpaceKind::Lattice; }
  int dim() const noexcept { return d_; }
  int half_dims() const noexcept { return m_; }

  Point origin() const;
  /// Validated construction: size d, first m coordinates >= 0, integral on a lattice.
  Point point(std::vector<double> coords) const;
  bool contains(const Point& x) const noexcept;

  double distance(const Point& x, const Point& y) const;
  /// rho(x, theta)
  double norm(const Point& x) const;
  Point translate(const Point& x, const Point& y) const;

  double ball_measure(double h) const;
  /// Exact cardinality of the open lattice ball (Lattice only).
  std::int64_t ball_count(double h) const;
  /// Largest integer strictly below h; the lattice ball is a box of this half-width.
  static std::int64_t lattice_radius(double h);

  std::vector<Point> enumerate_ball(double h) const;
  /// n points uniform on B_h; point i depends only on (seed, i).
  std::vector<Point> sample_ball(double h, std::size_t n, std::uint64_t seed) const;
  Point sample_ball_point(double h, std::uint64_t seed, std::uint64_t index) const;

  /// Surface factor of the radial reduction: d/dt mu(B_t) = d 2^{d-m} t^{d-1}.
  double shell_area(double t) const;

  void require_valid_radius(double h) const;

  friend bool operator==(const Space&, const Space&) = default;

 private:
  Space(SpaceKind kind, int d, int m);
  void require_same_dim(const Point& x) const;

  SpaceKind kind_;
  int d_;
  int m_;
};

std::string describe(const Space& space);

}  // namespace sharp
