#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sharp/modulus.hpp"
#include "sharp/report.hpp"
#include "sharp/space.hpp"
#include "sharp/theorems.hpp"

namespace sharp {

using Rational = boost::multiprecision::cpp_rational;

/// Exact value of a finite double (every finite double is a dyadic rational).
Rational to_rational(double x);
/// Parses "p/q", an integer, or a decimal such as "1.5" exactly.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

/// A modulus with rational values at integer arguments: omega(t) = t, or a
/// table with rational breakpoints. t^alpha with alpha < 1 is not rational
/// and is rejected.
class ExactModulus {
 public:
  static ExactModulus identity();
  static ExactModulus table(std::vector<std::pair<Rational, Rational>> points);
  /// From a double-valued modulus; throws for power moduli other than alpha = 1.
  static ExactModulus from(const Modulus& omega);

  Rational operator()(std::int64_t t) const;
  Rational operator()(const Rational& t) const;
  std::string label() const;

 private:
  std::vector<std::pair<Rational, Rational>> points_;  // empty: identity
};

/// Integer lattice point coordinates.
using LatticeIndex = std::vector<std::int64_t>;

/// A rational-valued lattice function. With support_radius R the function is
/// zero at every point with |x|_inf >= R and every sup below is exact; without
/// it the sups are taken over the search window only.
struct ExactFunction {
  std::function<Rational(const LatticeIndex&)> value;
  std::optional<Rational> support_radius;
  std::optional<Rational> holder_bound;  // certified; replaces the window estimate when present
  std::optional<Rational> gradient_bound;
  std::string label;
};

ExactFunction exact_f_eh(const Space& space, const ExactModulus& omega, const Rational& h);
ExactFunction exact_f_omega(const Space& space, const ExactModulus& omega, const Rational& c, int sign);
ExactFunction exact_zero();

struct ExactInstance {
  Space space = Space::lattice(1, 0);
  ExactModulus omega = ExactModulus::identity();
  Rational h;
  ExactFunction f;
  std::int64_t window = 4;  // half-width of the search box for non-compact functions
};

/// Exact rational evaluation of both sides. Covers lemma1, nagy, nagy_l1,
/// sobolev and charge. Verdicts compare the gap with 0 exactly.
InequalityReport exact_verify(TheoremId id, const ExactInstance& instance);

/// mu(B_h) and I(h) on a lattice, exactly.
std::int64_t exact_ball_count(const Space& space, const Rational& h);
Rational exact_ball_integral(const Space& space, const ExactModulus& omega, const Rational& h);

}  // namespace sharp
