#include "sharp/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace sharp {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "Holds";
    case Verdict::EqualityAttained: return "EqualityAttained";
    case Verdict::Violated: return "Violated";
  }
  return "?";
}

Verdict classify(double gap, double tol) {
  if (!std::isfinite(gap) || gap < -tol) return Verdict::Violated;
  if (gap <= tol) return Verdict::EqualityAttained;
  return Verdict::Holds;
}

void settle(InequalityReport& r, double rel_tol) {
  r.rhs = r.rhs_term1 + r.rhs_term2;
  r.gap = r.rhs - r.lhs;
  r.tolerance = rel_tol * std::max({1.0, std::fabs(r.lhs), std::fabs(r.rhs)});
  r.verdict = classify(r.gap, r.tolerance);
}

std::string format_number(double x) {
  if (x == 0.0) return "0";  // no "-0"
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string render(const Table::Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  return csv_escape(std::get<std::string>(c));
}

}  // namespace

std::string Table::to_csv() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << csv_escape(columns[i]);
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << render(row[i]);
    os << '\n';
  }
  return os.str();
}

nlohmann::ordered_json Table::to_json() const {
  auto out = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size() && i < columns.size(); ++i)
      std::visit([&](const auto& v) { obj[columns[i]] = v; }, row[i]);
    out.push_back(std::move(obj));
  }
  return out;
}

Table reports_table(std::span<const InequalityReport> reports) {
  Table t;
  t.columns = {"theorem_id", "d",         "m",   "alpha_or_modulus", "h",         "lhs",    "rhs",
               "rhs_term1",  "rhs_term2", "gap", "tolerance",        "verdict"};
  const bool any_exact = std::any_of(reports.begin(), reports.end(), [](const auto& r) { return r.exact.has_value(); });
  if (any_exact) t.columns.push_back("exact");
  for (const auto& r : reports) {
    std::vector<Table::Cell> row{r.theorem_id, std::int64_t{r.d}, std::int64_t{r.m}, r.modulus, r.h,
                                 r.lhs,        r.rhs,             r.rhs_term1,       r.rhs_term2, r.gap,
                                 r.tolerance,  to_string(r.verdict)};
    if (any_exact)
      row.emplace_back(r.exact ? "lhs=" + r.exact->lhs + ";rhs=" + r.exact->rhs + ";gap=" + r.exact->gap
                               : std::string{});
    t.rows.push_back(std::move(row));
  }
  return t;
}

nlohmann::ordered_json to_json(const InequalityReport& r) {
  nlohmann::ordered_json j;
  j["theorem_id"] = r.theorem_id;
  j["d"] = r.d;
  j["m"] = r.m;
  j["alpha_or_modulus"] = r.modulus;
  j["h"] = r.h;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["rhs_term1"] = r.rhs_term1;
  j["rhs_term2"] = r.rhs_term2;
  j["gap"] = r.gap;
  j["tolerance"] = r.tolerance;
  j["verdict"] = to_string(r.verdict);
  j["equality_expected"] = r.equality_expected;
  if (r.exact) j["exact"] = {{"lhs", r.exact->lhs}, {"rhs", r.exact->rhs}, {"gap", r.exact->gap}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

}  // namespace sharp
