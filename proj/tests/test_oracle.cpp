#include <cmath>
#include <vector>

#include "doctest.h"
#include "sharp/calculus.hpp"
#include "sharp/oracle.hpp"

using namespace sharp;

TEST_CASE("cone specs are reproducible and within their certificates") {
  const Space s = Space::lattice(2, 1);
  const Modulus w = Modulus::power(0.5);
  for (std::uint64_t t = 0; t < 50; ++t) {
    const ConeFunctionSpec a = random_cone_spec(TheoremId::Nagy, s, w, 9, t);
    const ConeFunctionSpec b = random_cone_spec(TheoremId::Nagy, s, w, 9, t);
    CHECK(a.to_json() == b.to_json());
    if (a.is_constant()) continue;
    for (std::size_t i = 0; i < a.centers.size(); ++i) {
      CHECK(s.contains(a.centers[i]));
      CHECK(a.heights[i] < a.slope * w(a.radii[i]));
    }
    const FunctionModel f = cone_model(a, s, w);
    const auto pairs = lattice_pairs(s, 5);
    CHECK(holder_lower_estimate(f, s, w, pairs) <= a.slope + 1e-12);
  }
}

TEST_CASE("trials scale with the function") {
  const Space s = Space::lattice(2, 0);
  const Modulus w = Modulus::power(1.0);
  for (std::uint64_t t = 0; t < 20; ++t) {
    const ConeFunctionSpec spec = random_cone_spec(TheoremId::Nagy, s, w, 4, t);
    const TrialResult a = evaluate_trial(TheoremId::Nagy, s, w, spec, 2.5);
    const TrialResult b = evaluate_trial(TheoremId::Nagy, s, w, spec.scaled(3.0), 2.5);
    CHECK(b.lhs == doctest::Approx(3.0 * a.lhs).epsilon(1e-12));
    CHECK(b.rhs == doctest::Approx(3.0 * a.rhs).epsilon(1e-12));
  }
}

TEST_CASE("small suites report no violations") {
  const std::vector<double> lattice_h{1.5, 2.5, 3.5};
  const std::vector<double> continuum_h{0.5, 1.5};
  for (TheoremId id : all_theorems()) {
    const bool lattice = id == TheoremId::Lemma1 || id == TheoremId::Nagy || id == TheoremId::NagyL1 ||
                         id == TheoremId::Sobolev || id == TheoremId::Charge;
    const Space s = lattice ? Space::lattice(2, 1) : Space::continuum(1, 0);
    for (double alpha : {0.5, 1.0}) {
      const SuiteReport r = random_suite(id, s, Modulus::power(alpha), lattice ? lattice_h : continuum_h, 60, 3);
      CAPTURE(r.theorem_id);
      CHECK(r.violations == 0);
      CHECK(r.min_gap >= -1e-9);
    }
  }
}

TEST_CASE("hypersingular trials in two dimensions") {
  const std::vector<double> hs{0.7, 1.5};
  const SuiteReport r = random_suite(TheoremId::Hypersingular, Space::continuum(2, 0), Modulus::power(1.0), hs, 5, 8);
  CHECK(r.violations == 0);
}

TEST_CASE("suites reject mismatched spaces") {
  const std::vector<double> hs{1.5};
  CHECK_THROWS_AS(random_suite(TheoremId::Nagy, Space::continuum(1, 0), Modulus::power(1.0), hs, 5, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(random_suite(TheoremId::MixedAdditive, Space::continuum(2, 0), Modulus::power(1.0), hs, 5, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(random_suite(TheoremId::Nagy, Space::lattice(1, 0), Modulus::power(1.0), hs, 0, 1),
                  std::invalid_argument);
}

TEST_CASE("deterministic and Monte Carlo paths agree") {
  CrossCheckParams p;
  p.space = Space::continuum(2, 1);
  p.omega = Modulus::power(0.5);
  p.kernel = Kernel::power_law(0.25);
  p.h = 1.3;
  for (const std::string& op : {"ball_integral", "kernel_ball_mass", "kernel_tail_mass", "split_point"}) {
    CAPTURE(op);
    const AgreementReport a = mc_cross_check(op, p, 40000, 21);
    CHECK(a.agree);
    CHECK(a.standard_error > 0.0);
  }
  CrossCheckParams t = p;
  t.omega = Modulus::table({{0.0, 0.0}, {0.5, 1.0}, {2.0, 1.4}});
  CHECK(mc_cross_check("radial_table", t, 40000, 21).agree);
  CrossCheckParams l = p;
  l.space = Space::lattice(2, 0);
  l.h = 3.5;
  CHECK(mc_cross_check("lattice_ball_integral", l, 40000, 21).agree);
  CrossCheckParams st = p;
  st.space = Space::continuum(2, 0);
  st.x = Point{0.3, -0.2};
  CHECK(mc_cross_check("steklov_average", st, 40000, 21).agree);
  CHECK_THROWS_AS(mc_cross_check("nope", p, 100, 1), std::invalid_argument);
}
