#include "sharp/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include "CLI11.hpp"
#include "sharp/calculus.hpp"
#include "sharp/errors.hpp"
#include "sharp/exact.hpp"
#include "sharp/operators.hpp"
#include "sharp/oracle.hpp"
#include "sharp/report.hpp"
#include "sharp/theorems.hpp"

namespace sharp {

namespace {

using nlohmann::ordered_json;

bool is_exact_theorem(TheoremId id) {
  return id == TheoremId::Lemma1 || id == TheoremId::Nagy || id == TheoremId::NagyL1 || id == TheoremId::Sobolev ||
         id == TheoremId::Charge;
}

std::optional<ExactModulus> exact_modulus(const Modulus& omega) {
  if (omega.is_power() && omega.alpha() != 1.0) return std::nullopt;
  return ExactModulus::from(omega);
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

/// lemma1 through charge are sampled on the lattice of the same
/// shape (exact sums); the mixed forms on the continuum line.
Space suite_space(TheoremId id, const Space& space) {
  if (is_exact_theorem(id)) return Space::lattice(space.dim(), space.half_dims());
  if (id == TheoremId::Hypersingular) return Space::continuum(space.dim(), space.half_dims());
  return Space::continuum(1, std::min(space.half_dims(), 1));
}

std::vector<double> suite_h_values(const Space& space, const std::vector<double>& h_values) {
  std::vector<double> out;
  for (double h : h_values)
    if (h > 0.0 && (!space.is_lattice() || h > 1.0)) out.push_back(h);
  if (out.empty()) throw ConfigError("random suite on " + describe(space) + " has no admissible h in the h list");
  return out;
}

Kernel kernel_for(const ExperimentConfig& config, const Modulus& omega) {
  return config.kernel_given ? config.kernel : Kernel::power_law(0.5 * omega.exponent_at_zero());
}

std::string render(const ExperimentConfig& config, const std::vector<std::pair<std::string, Table>>& tables) {
  if (config.format == "json") {
    ordered_json j = ordered_json::object();
    for (const auto& [name, t] : tables) j[name] = t.to_json();
    return j.dump(2) + "\n";
  }
  std::string out;
  for (std::size_t i = 0; i < tables.size(); ++i) {
    if (i) out += "\n";
    out += tables[i].second.to_csv();
  }
  return out;
}

struct SuiteRun {
  Table table;
  std::size_t violations = 0;
  std::vector<ordered_json> worst;
};

SuiteRun run_suites(const ExperimentConfig& config, const std::vector<TheoremId>& theorems) {
  SuiteRun run;
  run.table.columns = {"theorem_id", "space", "modulus", "seed", "trials", "violations", "min_gap", "worst_h"};
  for (TheoremId id : theorems)
    for (const Space& given : config.spaces)
      for (const Modulus& omega : config.moduli) {
        const Space space = suite_space(id, given);
        const std::vector<double> hs = suite_h_values(space, config.h_values);
        SuiteOptions options;
        options.quadrature.seed = config.quadrature.seed;
        if (config.kernel_given) options.kernel = config.kernel;
        for (std::uint64_t seed : config.suite->seeds) {
          const SuiteReport s = random_suite(id, space, omega, hs, config.suite->trials, seed, options);
          run.violations += s.violations;
          run.table.rows.push_back({s.theorem_id, describe(space), omega.label(), static_cast<std::int64_t>(seed),
                                    static_cast<std::int64_t>(s.trials), static_cast<std::int64_t>(s.violations),
                                    s.min_gap, s.worst_case_spec.value("h", 0.0)});
        }
      }
  return run;
}

CommandResult cmd_constant(const ExperimentConfig& config) {
  require(!config.h_values.empty(), "constant: the h list is empty");
  Table t;
  t.columns = {"kind", "d", "m", "modulus", "h", "mu", "I", "ratio", "method", "error_bound"};
  const bool any_lattice = std::any_of(config.spaces.begin(), config.spaces.end(), [](const Space& s) { return s.is_lattice(); });
  if (any_lattice) t.columns.push_back("exact");
  for (const Space& space : config.spaces)
    for (const Modulus& omega : config.moduli)
      for (double h : config.h_values) {
        space.require_valid_radius(h);
        const double mu = ball_mass(space, h);
        const Estimate I = ball_integral_of_modulus(space, omega, h, config.quadrature);
        std::vector<Table::Cell> row{to_string(space.kind()), std::int64_t{space.dim()}, std::int64_t{space.half_dims()},
                                     omega.label(), h, mu, I.value, I.value / mu, to_string(I.method),
                                     I.error_bound};
        if (any_lattice) {
          std::string exact;
          if (space.is_lattice())
            if (const auto w = exact_modulus(omega)) {
              const Rational q = to_rational(h);
              const std::int64_t count = exact_ball_count(space, q);
              const Rational integral = exact_ball_integral(space, *w, q);
              exact = "mu=" + std::to_string(count) + ";I=" + to_string(integral) +
                      ";ratio=" + to_string(Rational(integral / count));
            }
          row.emplace_back(exact);
        }
        t.rows.push_back(std::move(row));
      }
  return {kExitOk, render(config, {{"constants", t}}), {}};
}

CommandResult cmd_verify(const ExperimentConfig& config) {
  require(!config.theorems.empty(), "verify: theorem_id is required");
  require(!config.h_values.empty(), "verify: the h list is empty");
  std::vector<InequalityReport> reports;
  for (TheoremId id : config.theorems)
    for (const Space& space : config.spaces)
      for (const Modulus& omega : config.moduli)
        for (double h : config.h_values) {
          VerifyOptions options;
          options.quadrature = config.quadrature;
          options.kernel = kernel_for(config, omega);
          options.split_radius = config.split_radius;
          InequalityReport r = verify_extremal(id, space, omega, h, options);
          if (space.is_lattice() && is_exact_theorem(id))
            if (const auto w = exact_modulus(omega)) {
              ExactInstance inst;
              inst.space = space;
              inst.omega = *w;
              inst.h = to_rational(h);
              inst.f = id == TheoremId::Lemma1 ? exact_f_omega(space, *w, Rational(0), +1)
                                               : exact_f_eh(space, *w, inst.h);
              const InequalityReport e = exact_verify(id, inst);
              r.exact = e.exact;
              r.verdict = e.verdict;
            }
          reports.push_back(std::move(r));
        }
  CommandResult result;
  std::vector<std::pair<std::string, Table>> tables{{"reports", reports_table(reports)}};
  std::size_t violated = 0;
  for (const auto& r : reports) {
    if (r.verdict == Verdict::Violated) ++violated;
    else if (r.equality_expected && r.verdict != Verdict::EqualityAttained)
      result.message += r.theorem_id + ": equality expected at the extremal but gap is " + format_number(r.gap) + "\n";
  }
  if (config.suite) {
    SuiteRun run = run_suites(config, config.theorems);
    violated += run.violations;
    tables.emplace_back("suites", std::move(run.table));
  }
  result.exit_code = violated ? kExitViolation : kExitOk;
  result.output = render(config, tables);
  return result;
}

CommandResult cmd_stechkin(const ExperimentConfig& config) {
  require(!config.N_values.empty(), "stechkin: the N list is empty");
  Table t;
  t.columns = {"kind", "d", "m", "modulus", "N", "h", "E_N"};
  for (const Space& space : config.spaces)
    for (const Modulus& omega : config.moduli) {
      const auto curve = stechkin_curve(space, omega, config.N_values, config.quadrature);
      std::vector<std::size_t> order(curve.size());
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return curve[a].N < curve[b].N; });
      for (std::size_t k = 1; k < order.size(); ++k) {
        const auto& lo = curve[order[k - 1]];
        const auto& hi = curve[order[k]];
        if (hi.N > lo.N && !(hi.E < lo.E))
          throw NumericFailure("stechkin: E_N is not strictly decreasing between N = " + format_number(lo.N) +
                               " and N = " + format_number(hi.N));
      }
      for (const auto& p : curve)
        t.rows.push_back({to_string(space.kind()), std::int64_t{space.dim()}, std::int64_t{space.half_dims()},
                          omega.label(), p.N, p.h, p.E});
    }
  return {kExitOk, render(config, {{"curve", t}}), {}};
}

CommandResult cmd_oracle(const ExperimentConfig& config) {
  require(!config.h_values.empty(), "oracle: the h list is empty");
  ExperimentConfig c = config;
  if (!c.suite) c.suite = SuiteSettings{1000, {c.quadrature.seed}};
  const std::vector<TheoremId> theorems =
      c.theorems.empty() ? std::vector<TheoremId>(all_theorems().begin(), all_theorems().end()) : c.theorems;
  SuiteRun run = run_suites(c, theorems);
  Table checks;
  checks.columns = {"op", "space", "modulus", "h", "deterministic", "monte_carlo", "standard_error", "agree"};
  std::size_t disagreements = 0;
  for (const CrossCheckSpec& x : c.cross_checks) {
    const AgreementReport a = mc_cross_check(x.op, x.params, x.samples, x.seed);
    if (!a.agree) ++disagreements;
    checks.rows.push_back({a.op_id, describe(x.params.space), x.params.omega.label(), x.params.h, a.deterministic,
                           a.monte_carlo, a.standard_error, std::string(a.agree ? "yes" : "no")});
  }
  CommandResult result;
  if (disagreements) result.message = std::to_string(disagreements) + " cross check(s) outside 4 standard errors\n";
  result.exit_code = (run.violations || disagreements) ? kExitViolation : kExitOk;
  std::vector<std::pair<std::string, Table>> tables{{"suites", std::move(run.table)}};
  if (!checks.rows.empty()) tables.emplace_back("cross_checks", std::move(checks));
  result.output = render(c, tables);
  return result;
}

}  // namespace

void apply_overrides(ExperimentConfig& config, const Overrides& o) {
  if (o.seed) {
    config.quadrature.seed = *o.seed;
    if (config.suite) config.suite->seeds = {*o.seed};
    for (auto& x : config.cross_checks) x.seed = *o.seed;
  }
  if (o.tol) {
    if (!(*o.tol > 0.0)) throw ConfigError("--tol must be positive");
    config.quadrature.abs_tol = *o.tol;
    config.quadrature.rel_tol = *o.tol;
  }
  if (o.out) config.out = *o.out;
  if (o.format) {
    if (*o.format != "csv" && *o.format != "json") throw ConfigError("--format must be csv or json");
    config.format = *o.format;
  }
}

CommandResult execute(const std::string& command, const ExperimentConfig& config) {
  if (command == "constant") return cmd_constant(config);
  if (command == "verify") return cmd_verify(config);
  if (command == "stechkin") return cmd_stechkin(config);
  if (command == "oracle") return cmd_oracle(config);
  throw ConfigError("unknown command " + command);
}

CommandResult run_command(const std::string& command, const nlohmann::json& json, const Overrides& overrides) {
  try {
    ExperimentConfig config = parse_config(json);
    apply_overrides(config, overrides);
    return execute(command, config);
  } catch (const ConfigError& e) {
    return {kExitConfig, {}, std::string("config error: ") + e.what() + "\n"};
  } catch (const std::invalid_argument& e) {
    return {kExitConfig, {}, std::string("invalid input: ") + e.what() + "\n"};
  } catch (const NumericFailure& e) {
    return {kExitNumeric, {}, std::string("numeric failure: ") + e.what() + "\n"};
  }
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Sharp Nagy and Landau-Kolmogorov inequalities in metric measure spaces"};
  std::string command, config_path;
  Overrides o;
  app.add_option("command", command, "constant, verify, stechkin or oracle")
      ->required()
      ->check(CLI::IsMember({"constant", "verify", "stechkin", "oracle"}));
  app.add_option("--config", config_path, "experiment config (JSON)")->required();
  app.add_option("--seed", o.seed, "seed override");
  app.add_option("--tol", o.tol, "quadrature tolerance override");
  app.add_option("--out", o.out, "output path (stdout when absent)");
  app.add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "config error: cannot open " << config_path << "\n";
    return kExitConfig;
  }
  nlohmann::json json;
  try {
    json = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  CommandResult result = run_command(command, json, o);
  std::cerr << result.message;
  if (result.exit_code == kExitConfig || result.exit_code == kExitNumeric) return result.exit_code;
  std::optional<std::string> out = o.out;
  if (!out && json.contains("out") && json["out"].is_string()) out = json["out"].get<std::string>();
  if (out) {
    std::ofstream file(*out, std::ios::binary);
    if (!file) {
      std::cerr << "cannot write " << *out << "\n";
      return kExitConfig;
    }
    file << result.output;
  } else {
    std::cout << result.output;
  }
  return result.exit_code;
}

}  // namespace sharp
