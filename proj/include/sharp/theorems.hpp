#pragma once

#include <array>
#include <optional>
#include <string>

#include "sharp/hypersingular.hpp"
#include "sharp/modulus.hpp"
#include "sharp/quadrature.hpp"
#include "sharp/report.hpp"
#include "sharp/space.hpp"

namespace sharp {

enum class TheoremId { Lemma1, Nagy, NagyL1, Sobolev, Charge, Hypersingular, MixedAdditive, MixedMultiplicative };

std::string to_string(TheoremId id);
TheoremId parse_theorem_id(const std::string& name);
const std::array<TheoremId, 8>& all_theorems();

struct VerifyOptions {
  QuadratureSpec quadrature;
  Kernel kernel = Kernel::power_law(0.5);
  double split_radius = 1.0;  // singular/tail split of the full hypersingular operator
};

/// Evaluates the inequality of `id` at its extremal function on (space, omega, h).
///
/// lhs is evaluated from the function (at theta, where every extremal attains
/// its sup); the right-hand side uses the certified norms. Lemma 1 through the
/// charge form run on both space families; the hypersingular and mixed forms
/// need a continuum space, and the multiplicative form a power modulus. For
/// mixed forms with m >= 2 no extremal is known: the report uses the orthant
/// primitive of f_{e,h} and expects a strict inequality.
InequalityReport verify_extremal(TheoremId id, const Space& space, const Modulus& omega, double h,
                                 const VerifyOptions& options = {});

}  // namespace sharp
