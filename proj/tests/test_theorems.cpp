#include <cmath>

#include "doctest.h"
#include "sharp/calculus.hpp"
#include "sharp/theorems.hpp"

using namespace sharp;

TEST_CASE("theorem ids round-trip") {
  for (TheoremId id : all_theorems()) CHECK(parse_theorem_id(to_string(id)) == id);
  CHECK_THROWS_AS(parse_theorem_id("landau"), std::invalid_argument);
}

TEST_CASE("extremal equalities on the closed-form matrix") {
  for (auto [d, m] : {std::pair{1, 0}, {2, 0}, {2, 1}, {3, 2}})
    for (double alpha : {0.5, 1.0})
      for (double h : {0.5, 1.0, 2.0})
        for (TheoremId id : {TheoremId::Lemma1, TheoremId::Nagy, TheoremId::NagyL1, TheoremId::Sobolev,
                             TheoremId::Charge}) {
          const InequalityReport r = verify_extremal(id, Space::continuum(d, m), Modulus::power(alpha), h);
          CAPTURE(r.theorem_id);
          CAPTURE(d);
          CAPTURE(m);
          CHECK(r.verdict == Verdict::EqualityAttained);
          CHECK(std::fabs(r.gap) <= 1e-8 * std::max({1.0, std::fabs(r.lhs), std::fabs(r.rhs)}));
          CHECK(r.tolerance == doctest::Approx(1e-8 * std::max({1.0, r.lhs, r.rhs})));
        }
}

TEST_CASE("extremal equalities on lattices and with table moduli") {
  const Modulus table = Modulus::table({{0.0, 0.0}, {1.0, 1.0}, {2.0, 1.5}, {4.0, 2.0}});
  for (const Space& s : {Space::lattice(1, 0), Space::lattice(2, 1)})
    for (TheoremId id : {TheoremId::Lemma1, TheoremId::Nagy, TheoremId::Sobolev})
      for (double h : {1.5, 3.0}) {
        CHECK(verify_extremal(id, s, Modulus::power(0.5), h).verdict == Verdict::EqualityAttained);
        CHECK(verify_extremal(id, s, table, h).verdict == Verdict::EqualityAttained);
      }
  const InequalityReport r = verify_extremal(TheoremId::Nagy, Space::continuum(2, 0), table, 2.5);
  CHECK(r.verdict == Verdict::EqualityAttained);
  CHECK(r.tolerance == doctest::Approx(1e-5 * std::max({1.0, r.lhs, r.rhs})));
}

TEST_CASE("settle classifies gaps") {
  InequalityReport r;
  r.lhs = 1.0;
  r.rhs_term1 = 0.5;
  r.rhs_term2 = 0.5 + 1e-12;
  settle(r, 1e-8);
  CHECK(r.verdict == Verdict::EqualityAttained);
  r.rhs_term2 = 0.6;
  settle(r, 1e-8);
  CHECK(r.verdict == Verdict::Holds);
  r.rhs_term2 = 0.4;
  settle(r, 1e-8);
  CHECK(r.verdict == Verdict::Violated);
  CHECK(classify(-2e-8, 1e-8) == Verdict::Violated);
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(2.0 / 3.0) == "0.666666666667");
}

TEST_CASE("report tables") {
  InequalityReport r = verify_extremal(TheoremId::Nagy, Space::continuum(1, 0), Modulus::power(1.0), 1.0);
  const std::vector<InequalityReport> rs{r};
  const Table t = reports_table(rs);
  CHECK(t.columns.size() == 12);
  const std::string csv = t.to_csv();
  CHECK(csv.rfind("theorem_id,d,m,alpha_or_modulus,h,lhs,rhs,rhs_term1,rhs_term2,gap,tolerance,verdict\n", 0) == 0);
  CHECK(csv.find("nagy,1,0,1,1,1,1,0.5,0.5,0,1e-08,EqualityAttained") != std::string::npos);
  CHECK(t.to_json()[0]["verdict"] == "EqualityAttained");
}
