#include <cmath>
#include <vector>

#include "doctest.h"
#include "sharp/calculus.hpp"
#include "sharp/extremals.hpp"
#include "sharp/operators.hpp"

using namespace sharp;

namespace {

QuadratureSpec method(QuadratureMethod m) {
  QuadratureSpec q;
  q.method = m;
  return q;
}

}  // namespace

TEST_CASE("I(h) for a power modulus is d 2^{d-m} h^{d+alpha} / (d+alpha)") {
  const Space s = Space::continuum(2, 0);
  const Estimate e = ball_integral_of_modulus(s, Modulus::power(1.0), 1.0, {});
  CHECK(e.method == QuadratureMethod::ClosedForm);
  CHECK(e.value == doctest::Approx(8.0 / 3.0).epsilon(1e-15));
  CHECK(e.value / s.ball_measure(1.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("closed form and radial quadrature agree to 1e-9") {
  for (int d = 1; d <= 4; ++d)
    for (int m = 0; m <= d; m += (d > 1 ? d - 1 : 1))
      for (double alpha : {0.3, 0.5, 1.0})
        for (double h : {0.5, 1.0, 2.0}) {
          const Space s = Space::continuum(d, m);
          const Modulus w = Modulus::power(alpha);
          const double closed = ball_integral_of_modulus(s, w, h, method(QuadratureMethod::ClosedForm)).value;
          const double radial = ball_integral_of_modulus(s, w, h, method(QuadratureMethod::Radial1D)).value;
          CHECK(radial == doctest::Approx(closed).epsilon(1e-9));
        }
}

TEST_CASE("lattice ball integrals are shell sums") {
  // Z^2, h = 3/2: eight neighbours at distance 1.
  CHECK(ball_integral_of_modulus(Space::lattice(2, 0), Modulus::power(1.0), 1.5, {}).value == 8.0);
  // Z, h = 5/2: 2 * (1 + 2^0.5).
  CHECK(ball_integral_of_modulus(Space::lattice(1, 0), Modulus::power(0.5), 2.5, {}).value ==
        doctest::Approx(2.0 * (1.0 + std::sqrt(2.0))).epsilon(1e-15));
  CHECK_THROWS_AS(ball_integral_of_modulus(Space::lattice(1, 0), Modulus::power(1.0), 2.0,
                                           method(QuadratureMethod::ClosedForm)),
                  std::invalid_argument);
}

TEST_CASE("lattice enumeration agrees with Monte Carlo") {
  for (auto [d, m] : {std::pair{1, 0}, {2, 0}, {2, 1}}) {
    const Space s = Space::lattice(d, m);
    const Modulus w = Modulus::power(0.5);
    const double exact = ball_integral_of_modulus(s, w, 3.5, {}).value;
    QuadratureSpec q = method(QuadratureMethod::MonteCarlo);
    q.mc_samples = 50000;
    q.seed = 5;
    const Estimate mc = ball_integral_of_modulus(s, w, 3.5, q);
    CHECK(std::fabs(mc.value - exact) <= 4.0 * mc.error_bound);
  }
}

TEST_CASE("table moduli integrate radially") {
  const Modulus w = Modulus::table({{0.0, 0.0}, {0.5, 1.0}, {2.0, 1.5}});
  const Space s = Space::continuum(2, 1);
  // 2 * 2 * int_0^h w(t) t dt through the closed moments.
  const double expected = 2.0 * 2.0 * w.moment(1, 0.0, 3.0);
  CHECK(ball_integral_of_modulus(s, w, 3.0, {}).value == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("ball_integral_at follows translated balls") {
  const Space s = Space::continuum(2, 0);
  const FunctionModel f = make_f_eh(s, Modulus::power(1.0), 1.0);
  const Estimate at_theta = ball_integral_at(f, s, 1.0, s.origin(), {});
  CHECK(at_theta.value == doctest::Approx(4.0 - 8.0 / 3.0).epsilon(1e-12));
  QuadratureSpec tight;
  tight.abs_tol = tight.rel_tol = 1e-12;
  const Estimate off = ball_integral_at(f, s, 1.0, Point{0.3, -0.2}, tight);
  CHECK(off.value / 4.0 == doctest::Approx(0.30491666666666666667).epsilon(1e-10));
}

TEST_CASE("seminorm of f_eh matches its certificate") {
  const Modulus w = Modulus::power(1.0);
  for (bool lattice : {true, false}) {
    const Space s = lattice ? Space::lattice(2, 0) : Space::continuum(1, 0);
    const double h = lattice ? 2.5 : 1.0;
    const FunctionModel f = make_f_eh(s, w, h);
    QuadratureSpec q;
    q.grid_divisions = 8;
    const CheckedValue local = seminorm_local(f, s, h, h + 2.0 * h + 1.0, q);
    REQUIRE(local.certified);
    CHECK_FALSE(local.disagreement);
    if (lattice)
      CHECK(local.estimate.value == doctest::Approx(*local.certified).epsilon(1e-14));
    else
      CHECK(local.estimate.value == doctest::Approx(*local.certified).epsilon(1e-6));
    const std::vector<double> grid{0.5 * h, h, 1.5 * h};
    const CheckedValue global = seminorm_global(f, s, grid, 4.0 * h + 1.0, q);
    CHECK(global.value() == doctest::Approx(*local.certified).epsilon(1e-12));
  }
}

TEST_CASE("seminorm is bounded by the L1 norm") {
  const Space s = Space::lattice(2, 1);
  const Modulus w = Modulus::power(0.5);
  for (double h : {1.5, 2.5, 3.5}) {
    const FunctionModel f = make_f_eh(s, w, 3.0);
    const double l1 = l1_norm(f, s, 6.0, {}).value();
    const double sem = seminorm_local(f, s, h, 3.0 + h + 1.0, {}).estimate.value;
    CHECK(sem <= l1 + 1e-12);
  }
}

TEST_CASE("norms scale linearly") {
  const Space s = Space::lattice(2, 0);
  const Modulus w = Modulus::power(0.5);
  const FunctionModel f = make_f_eh(s, w, 2.5);
  for (double lambda : {0.25, 3.0}) {
    FunctionModel g;
    g.evaluator = [&, lambda](const Point& x) { return lambda * f(x); };
    g.support_radius = f.support_radius;
    const auto pairs = lattice_pairs(s, 3);
    CHECK(holder_lower_estimate(g, s, w, pairs) ==
          doctest::Approx(lambda * holder_lower_estimate(f, s, w, pairs)).epsilon(1e-12));
    CHECK(sup_norm(g, s, 4.0, 1.0).estimate.value ==
          doctest::Approx(lambda * sup_norm(f, s, 4.0, 1.0).estimate.value).epsilon(1e-12));
    CHECK(l1_norm(g, s, 4.0, {}).estimate.value ==
          doctest::Approx(lambda * l1_norm(f, s, 4.0, {}).estimate.value).epsilon(1e-12));
    CHECK(seminorm_local(g, s, 2.5, 5.0, {}).estimate.value ==
          doctest::Approx(lambda * seminorm_local(f, s, 2.5, 5.0, {}).estimate.value).epsilon(1e-12));
  }
}

TEST_CASE("integrate_from_zero removes integrable singularities") {
  QuadratureSpec q;
  q.abs_tol = q.rel_tol = 1e-12;
  auto g = [](double t) { return std::pow(t, -0.75); };
  CHECK(integrate_from_zero(g, 1.0, 8.0, q).value == doctest::Approx(4.0).epsilon(1e-10));
}
