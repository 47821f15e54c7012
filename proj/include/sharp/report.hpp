#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace sharp {

enum class Verdict { Holds, EqualityAttained, Violated };

std::string to_string(Verdict v);

/// Relative tolerances for equality verdicts: formula paths and quadrature paths.
constexpr double kClosedFormTolerance = 1e-8;
constexpr double kQuadratureTolerance = 1e-5;

/// Exact sides of a lattice check, as rational strings like "3/2".
struct ExactSides {
  std::string lhs;
  std::string rhs;
  std::string gap;
};

/// One evaluated inequality: lhs <= rhs_term1 + rhs_term2.
struct InequalityReport {
  std::string theorem_id;
  int d = 0;
  int m = 0;
  std::string modulus;  // alpha for a power modulus, otherwise the table label
  double h = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double rhs_term1 = 0.0;  // approximation term
  double rhs_term2 = 0.0;  // norm term
  double gap = 0.0;        // rhs - lhs
  double tolerance = 0.0;  // absolute
  Verdict verdict = Verdict::Holds;
  bool equality_expected = false;
  std::optional<ExactSides> exact;
  std::string note;
};

/// Fills rhs, gap, tolerance and verdict from lhs and the two terms. The
/// absolute tolerance is rel_tol * max(1, |lhs|, |rhs|).
void settle(InequalityReport& r, double rel_tol);

/// gap < -tol is Violated, |gap| <= tol is EqualityAttained, otherwise Holds.
Verdict classify(double gap, double tol);

/// "%.12g"
std::string format_number(double x);

/// A rectangular result set that renders to CSV or JSON. Doubles print with 12
/// significant digits in CSV; JSON keeps full precision.
struct Table {
  using Cell = std::variant<std::int64_t, double, std::string>;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  std::string to_csv() const;
  nlohmann::ordered_json to_json() const;
};

/// CSV columns: theorem_id, d, m, alpha_or_modulus, h, lhs, rhs, rhs_term1,
/// rhs_term2, gap, tolerance, verdict, and `exact` when any report carries it.
Table reports_table(std::span<const InequalityReport> reports);
nlohmann::ordered_json to_json(const InequalityReport& r);

}  // namespace sharp
