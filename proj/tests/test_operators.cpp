#include <cmath>
#include <vector>

#include "doctest.h"
#include "sharp/calculus.hpp"
#include "sharp/extremals.hpp"
#include "sharp/operators.hpp"
#include "sharp/rng.hpp"

using namespace sharp;

TEST_CASE("Steklov average of f_eh off the centre") {
  const Space s = Space::continuum(2, 0);
  QuadratureSpec q;
  q.abs_tol = q.rel_tol = 1e-12;
  const FunctionModel S = steklov_average(make_f_eh(s, Modulus::power(1.0), 1.0), s, 1.0, q);
  CHECK(S(Point{0.3, -0.2}) == doctest::Approx(0.30491666666666666667).epsilon(1e-10));
  CHECK(*S.operator_norm == 0.25);
  CHECK(*S.support_radius == 2.0);
}

TEST_CASE("Steklov averages reproduce constants") {
  for (const Space& s : {Space::continuum(2, 1), Space::lattice(2, 1)}) {
    const FunctionModel c = FunctionModel::constant(-1.75);
    const FunctionModel S = steklov_average(c, s, 2.5, {});
    CHECK(S(Point{1.0, -2.0}) == doctest::Approx(-1.75).epsilon(1e-12));
  }
}

TEST_CASE("Lemma 1 bound on random points of f_omega") {
  const Modulus w = Modulus::power(0.5);
  const Space s = Space::lattice(2, 0);
  const double h = 2.5;
  const FunctionModel f = make_f_omega(s, w, 0.3, -1);
  const FunctionModel S = steklov_average(f, s, h, {});
  const double bound = ostrowski_bound(s, w, h, 1.0, {});
  const CounterRng rng(11);
  for (std::uint64_t k = 0; k < 100; ++k) {
    const Point x{std::round(10.0 * rng.uniform(2 * k) - 5.0), std::round(10.0 * rng.uniform(2 * k + 1) - 5.0)};
    CHECK(std::fabs(f(x) - S(x)) <= bound + 1e-12);
  }
  CHECK(std::fabs(f(s.origin()) - S(s.origin())) == doctest::Approx(bound).epsilon(1e-14));
}

TEST_CASE("right-hand sides combine the two terms") {
  const Space s = Space::continuum(1, 0);
  const Modulus w = Modulus::power(1.0);
  CHECK(deviation_u(s, w, 1.0, {}) == doctest::Approx(0.5));
  CHECK(nagy_rhs(s, w, 1.0, 2.0, 3.0, {}) == doctest::Approx(2.0 * 0.5 + 1.5));
  CHECK(nagy_l1_rhs(s, w, 1.0, 2.0, 3.0, {}) == doctest::Approx(2.5));
  CHECK(sobolev_rhs(s, w, 1.0, 1.0, 3.0, {}) == doctest::Approx(2.5));
  CHECK(charge_nagy_rhs(s, w, 1.0, 2.0, 3.0, {}) == doctest::Approx(2.5));
}

TEST_CASE("charges act through their density") {
  const Space s = Space::lattice(1, 0);
  const ChargeModel nu{make_f_eh(s, Modulus::power(1.0), 2.5)};
  // density 2.5, 1.5, 0.5 at distances 0, 1, 2
  CHECK(charge_of_ball(nu, s, 2.5, s.origin(), {}).value == 6.5);
  CHECK(charge_of_ball(nu, s, 1.5, Point{1.0}, {}).value == 4.5);
  const FunctionModel avg = charge_average(nu, s, 1.5, {});
  CHECK(avg(Point{1.0}) == doctest::Approx(1.5));
  CHECK(charge_seminorm(nu, s, 2.5, 6.0, {}).estimate.value == 6.5);
}

TEST_CASE("Stechkin curve on the line with omega(t) = t") {
  const Space s = Space::continuum(1, 0);
  const std::vector<double> N{0.5, 1.0, 2.0};
  const auto curve = stechkin_curve(s, Modulus::power(1.0), N, {});
  CHECK(curve[0].E == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(curve[1].E == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(curve[2].E == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(curve[1].h == doctest::Approx(0.5).epsilon(1e-14));
  CHECK_THROWS_AS(radius_for_norm(Space::lattice(1, 0), 1.0), std::invalid_argument);
  CHECK_THROWS_AS(radius_for_norm(s, 0.0), std::invalid_argument);
}

TEST_CASE("E_N closed form and the Stechkin identity at f_eh") {
  for (auto [d, m] : {std::pair{1, 0}, {2, 0}, {2, 1}, {3, 2}})
    for (double alpha : {0.5, 1.0}) {
      const Space s = Space::continuum(d, m);
      const Modulus w = Modulus::power(alpha);
      for (double N : {0.1, 1.0, 7.0}) {
        const auto p = stechkin_curve(s, w, std::vector<double>{N}, {}).front();
        const double closed = d / (d + alpha) * std::pow(1.0 / (std::ldexp(1.0, d - m) * N), alpha / d);
        CHECK(p.E == doctest::Approx(closed).epsilon(1e-12));
        // ||f|| = E_N ||f||_H + N seminorm_h(f) at f = f_{e,h(N)}
        const FunctionModel f = make_f_eh(s, w, p.h);
        CHECK(*f.sup_norm == doctest::Approx(p.E * *f.holder_bound + N * f.seminorm->value).epsilon(1e-10));
      }
    }
}

TEST_CASE("upper gradient 1/2 is admissible for f_eh") {
  const Space s = Space::lattice(2, 0);
  const Modulus w = Modulus::power(0.5);
  const FunctionModel f = make_f_eh(s, w, 2.5);
  CHECK(upper_gradient_excess(f, 0.5, s, w, lattice_pairs(s, 4)) <= 1e-15);
  CHECK(upper_gradient_excess(f, 0.4, s, w, lattice_pairs(s, 4)) > 0.0);
}
