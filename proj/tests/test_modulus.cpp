#include <cmath>
#include <vector>

#include "doctest.h"
#include "sharp/modulus.hpp"
#include "sharp/quadrature.hpp"

using namespace sharp;

TEST_CASE("power modulus is homogeneous") {
  for (double alpha : {0.25, 0.5, 1.0}) {
    const Modulus w = Modulus::power(alpha);
    for (double lambda : {0.3, 1.0, 2.5})
      for (double t : {0.0, 0.1, 1.0, 7.0})
        CHECK(w(lambda * t) == doctest::Approx(std::pow(lambda, alpha) * w(t)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(Modulus::power(1.5), std::invalid_argument);
  CHECK_THROWS_AS(Modulus::power(0.0), std::invalid_argument);
}

TEST_CASE("table modulus interpolates and saturates") {
  const Modulus w = Modulus::table({{0.0, 0.0}, {1.0, 1.0}, {3.0, 2.0}});
  CHECK(w(0.5) == doctest::Approx(0.5));
  CHECK(w(2.0) == doctest::Approx(1.5));
  CHECK(w(10.0) == doctest::Approx(2.0));
  CHECK(w.inverse(1.5) == doctest::Approx(2.0));
  CHECK(std::isinf(w.inverse(2.5)));
  CHECK(w.exponent_at_zero() == 1.0);
}

TEST_CASE("non-concave tables are rejected") {
  const std::vector<std::pair<double, double>> convex{{0.0, 0.0}, {1.0, 0.5}, {2.0, 2.0}};
  CHECK_THROWS_AS(Modulus::table(convex), std::invalid_argument);
  const Modulus bad = Modulus::table_unchecked(convex);
  CHECK_FALSE(bad.is_concave());
  const std::vector<double> grid{0.0, 0.5, 1.0, 1.5, 2.0, 3.0};
  CHECK_FALSE(bad.validate(grid).ok());
  CHECK(Modulus::power(0.5).validate(grid).ok());
}

TEST_CASE("moduli are nondecreasing") {
  for (const Modulus& w : {Modulus::power(0.5), Modulus::table({{0.0, 0.0}, {0.5, 1.0}, {2.0, 1.5}})}) {
    double prev = 0.0;
    for (double t = 0.0; t < 5.0; t += 0.01) {
      CHECK(w(t) >= prev);
      prev = w(t);
    }
  }
}

TEST_CASE("moments match quadrature") {
  QuadratureSpec q;
  q.abs_tol = q.rel_tol = 1e-12;
  for (const Modulus& w : {Modulus::power(0.5), Modulus::power(1.0), Modulus::table({{0.0, 0.0}, {0.7, 1.0}, {1.9, 1.6}})}) {
    for (int k : {0, 1, 2}) {
      const double a = 0.2, b = 2.5;
      auto g = [&](double t) { return w(t) * std::pow(t, k); };
      const std::vector<double> breaks{0.7, 1.9};
      const double numeric = integrate_adaptive(g, a, b, q, breaks).value;
      CHECK(w.moment(k, a, b) == doctest::Approx(numeric).epsilon(1e-9));
    }
  }
}
