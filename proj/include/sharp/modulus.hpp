#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sharp {

struct ModulusViolation {
  enum class Kind { NonZeroAtOrigin, Negative, Decreasing, NotSemiAdditive };
  Kind kind;
  double s;
  double t;  // second argument for semi-additivity, otherwise equal to s
  double excess;
};

struct ModulusValidation {
  std::vector<ModulusViolation> violations;
  bool ok() const noexcept { return violations.empty(); }
};

/// A modulus of continuity: omega(0) = 0, nonnegative, nondecreasing,
/// semi-additive.
///
/// Two shapes ship: the power modulus t^alpha with 0 < alpha <= 1, and a
/// piecewise-linear table through (0, 0) that stays constant after its last
/// breakpoint. Tables must be concave (slopes nonincreasing) which is checked
/// on construction; table_unchecked() skips that check so diagnostics can look
/// at a bad table through validate().
class Modulus {
 public:
  enum class Kind { Power, Table };

  static Modulus power(double alpha);
  static Modulus table(std::vector<std::pair<double, double>> points);
  static Modulus table_unchecked(std::vector<std::pair<double, double>> points);

  Kind kind() const noexcept { return kind_; }
  bool is_power() const noexcept { return kind_ == Kind::Power; }
  double alpha() const noexcept { return alpha_; }
  const std::vector<std::pair<double, double>>& points() const noexcept { return points_; }

  double operator()(double t) const;
  double eval(double t) const { return (*this)(t); }

  /// Integral of omega(t) t^k over [a, b] (0 <= a <= b), in closed form for
  /// both shapes.
  double moment(int k, double a, double b) const;

  /// inf{t >= 0 : omega(t) >= y}; +inf when y exceeds sup omega.
  double inverse(double y) const;

  /// Exponent of the leading behaviour at 0: alpha, or 1 for a table.
  double exponent_at_zero() const noexcept { return kind_ == Kind::Power ? alpha_ : 1.0; }

  /// Checks the axioms on every point and every pair of points of the grid.
  ModulusValidation validate(std::span<const double> grid) const;

  bool is_concave() const;

  std::string label() const;

 private:
  Modulus() = default;

  Kind kind_ = Kind::Power;
  double alpha_ = 1.0;
  std::vector<std::pair<double, double>> points_;
};

}  // namespace sharp
