#include "doctest.h"
#include "sharp/exact.hpp"

using namespace sharp;

TEST_CASE("rational conversions") {
  CHECK(to_string(parse_rational("3/2")) == "3/2");
  CHECK(to_string(parse_rational("1.25")) == "5/4");
  CHECK(to_string(parse_rational("-7")) == "-7");
  CHECK(to_string(to_rational(0.1)) == "3602879701896397/36028797018963968");
  CHECK(to_rational(1.5) == Rational(3, 2));
  CHECK_THROWS_AS(parse_rational("x/2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
}

TEST_CASE("exact moduli") {
  CHECK(ExactModulus::identity()(Rational(5, 3)) == Rational(5, 3));
  const ExactModulus w = ExactModulus::table({{Rational(0), Rational(0)}, {Rational(2), Rational(1)}});
  CHECK(w(1) == Rational(1, 2));
  CHECK(w(5) == Rational(1));
  CHECK_THROWS_AS(ExactModulus::from(Modulus::power(0.5)), std::invalid_argument);
}

TEST_CASE("exact ball counts and integrals") {
  CHECK(exact_ball_count(Space::lattice(2, 0), Rational(3, 2)) == 9);
  CHECK(exact_ball_integral(Space::lattice(2, 0), ExactModulus::identity(), Rational(3, 2)) == 8);
  CHECK(exact_ball_integral(Space::lattice(1, 1), ExactModulus::identity(), Rational(7, 2)) == 6);
}

TEST_CASE("exact sharpness on Z and Z^2") {
  for (const Space& s : {Space::lattice(1, 0), Space::lattice(2, 0), Space::lattice(2, 1)})
    for (const Rational& h : {Rational(3, 2), Rational(5, 2), Rational(4)}) {
      const ExactModulus w = ExactModulus::identity();
      for (TheoremId id : {TheoremId::Lemma1, TheoremId::Nagy, TheoremId::NagyL1, TheoremId::Sobolev,
                           TheoremId::Charge}) {
        ExactInstance inst;
        inst.space = s;
        inst.omega = w;
        inst.h = h;
        inst.f = id == TheoremId::Lemma1 ? exact_f_omega(s, w, Rational(0), 1) : exact_f_eh(s, w, h);
        const InequalityReport r = exact_verify(id, inst);
        CAPTURE(r.theorem_id);
        REQUIRE(r.exact);
        CHECK(r.exact->gap == "0");
        CHECK(r.verdict == Verdict::EqualityAttained);
      }
    }
}

TEST_CASE("exact checks see strict inequalities and violations") {
  const Space s = Space::lattice(1, 0);
  const ExactModulus w = ExactModulus::identity();
  ExactInstance inst;
  inst.space = s;
  inst.omega = w;
  inst.h = Rational(5, 2);
  inst.f = exact_f_eh(s, w, Rational(3, 2));  // not the extremal for this h
  const InequalityReport strict = exact_verify(TheoremId::Nagy, inst);
  CHECK(strict.verdict == Verdict::Holds);
  CHECK(strict.exact->gap == "1/5");

  inst.h = Rational(3, 2);
  // Claiming a Holder bound that is too small breaks the bound.
  inst.f = exact_f_eh(s, w, Rational(5, 2));
  inst.f.holder_bound = Rational(1, 2);
  CHECK(exact_verify(TheoremId::Nagy, inst).verdict == Verdict::Violated);
  CHECK_THROWS_AS(exact_verify(TheoremId::Hypersingular, inst), std::invalid_argument);
  inst.h = Rational(1);
  CHECK_THROWS_AS(exact_verify(TheoremId::Nagy, inst), std::invalid_argument);
}

TEST_CASE("a table modulus keeps lattice checks exact") {
  const Space s = Space::lattice(2, 0);
  const ExactModulus w = ExactModulus::table({{Rational(0), Rational(0)}, {Rational(1), Rational(2)}, {Rational(3), Rational(3)}});
  ExactInstance inst;
  inst.space = s;
  inst.omega = w;
  inst.h = Rational(5, 2);
  inst.f = exact_f_eh(s, w, inst.h);
  CHECK(exact_verify(TheoremId::Nagy, inst).exact->gap == "0");
}
