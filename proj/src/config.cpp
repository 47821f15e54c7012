#include "sharp/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "sharp/errors.hpp"
#include "sharp/extremals.hpp"

namespace sharp {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& key, const std::string& what) {
  throw ConfigError(key + ": " + what);
}

const json& field(const json& j, const std::string& key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) fail(where, "missing \"" + key + "\"");
  return j.at(key);
}

double number(const json& j, const std::string& key) {
  if (!j.is_number()) fail(key, "expected a number");
  return j.get<double>();
}

std::int64_t integer(const json& j, const std::string& key) {
  if (!j.is_number_integer()) fail(key, "expected an integer");
  return j.get<std::int64_t>();
}

std::uint64_t unsigned_integer(const json& j, const std::string& key) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  const std::int64_t v = integer(j, key);
  if (v < 0) fail(key, "expected a nonnegative integer");
  return static_cast<std::uint64_t>(v);
}

std::string text(const json& j, const std::string& key) {
  if (!j.is_string()) fail(key, "expected a string");
  return j.get<std::string>();
}

std::vector<double> numbers(const json& j, const std::string& key) {
  std::vector<double> out;
  if (j.is_number()) return {j.get<double>()};
  if (!j.is_array()) fail(key, "expected a number or an array of numbers");
  for (const json& v : j) out.push_back(number(v, key));
  return out;
}

std::vector<std::pair<double, double>> pairs(const json& j, const std::string& key) {
  if (!j.is_array()) fail(key, "expected an array of [t, value] pairs");
  std::vector<std::pair<double, double>> out;
  for (const json& p : j) {
    if (!p.is_array() || p.size() != 2) fail(key, "expected an array of [t, value] pairs");
    out.emplace_back(number(p[0], key), number(p[1], key));
  }
  return out;
}

void only_keys(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
  if (!j.is_object()) fail(where, "expected an object");
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& item : j.items())
    if (!allowed.count(item.key())) fail(where, "unknown key \"" + item.key() + "\"");
}

template <class T, class Parse>
std::vector<T> one_or_many(const json& j, Parse parse) {
  std::vector<T> out;
  if (j.is_array()) {
    if (j.empty()) fail("config", "empty descriptor list");
    for (const json& v : j) out.push_back(parse(v));
  } else {
    out.push_back(parse(j));
  }
  return out;
}

// Library preconditions surface as std::invalid_argument; inside a config they
// are config errors.
template <class F>
auto guarded(const std::string& where, F&& make) -> decltype(make()) {
  try {
    return make();
  } catch (const std::invalid_argument& e) {
    fail(where, e.what());
  }
}

std::vector<TheoremId> parse_theorems(const json& j) {
  std::vector<TheoremId> out;
  auto one = [&](const json& v) {
    const std::string name = text(v, "theorem_id");
    out.push_back(guarded("theorem_id", [&] { return parse_theorem_id(name); }));
  };
  if (j.is_array()) {
    for (const json& v : j) one(v);
  } else {
    one(j);
  }
  return out;
}

Point parse_point(const json& j, const std::string& key) {
  return Point(numbers(j, key));
}

}  // namespace

Space parse_space(const json& j) {
  only_keys(j, "space", {"kind", "d", "m"});
  const std::string kind = text(field(j, "kind", "space"), "space.kind");
  const auto d = integer(field(j, "d", "space"), "space.d");
  const auto m = j.contains("m") ? integer(j.at("m"), "space.m") : 0;
  if (kind != "continuum" && kind != "lattice") fail("space.kind", "expected \"continuum\" or \"lattice\"");
  return guarded("space", [&] {
    return kind == "lattice" ? Space::lattice(static_cast<int>(d), static_cast<int>(m))
                             : Space::continuum(static_cast<int>(d), static_cast<int>(m));
  });
}

Modulus parse_modulus(const json& j) {
  if (j.is_number()) return guarded("modulus", [&] { return Modulus::power(j.get<double>()); });
  only_keys(j, "modulus", {"kind", "alpha", "points"});
  const std::string kind = text(field(j, "kind", "modulus"), "modulus.kind");
  if (kind == "power") {
    const double alpha = number(field(j, "alpha", "modulus"), "modulus.alpha");
    return guarded("modulus", [&] { return Modulus::power(alpha); });
  }
  if (kind == "table") {
    auto points = pairs(field(j, "points", "modulus"), "modulus.points");
    return guarded("modulus", [&] { return Modulus::table(std::move(points)); });
  }
  fail("modulus.kind", "expected \"power\" or \"table\"");
}

Kernel parse_kernel(const json& j) {
  only_keys(j, "kernel", {"kind", "beta", "points"});
  const std::string kind = text(field(j, "kind", "kernel"), "kernel.kind");
  if (kind == "power_law") {
    const double beta = number(field(j, "beta", "kernel"), "kernel.beta");
    return guarded("kernel", [&] { return Kernel::power_law(beta); });
  }
  if (kind == "table") {
    auto points = pairs(field(j, "points", "kernel"), "kernel.points");
    return guarded("kernel", [&] { return Kernel::table(std::move(points)); });
  }
  fail("kernel.kind", "expected \"power_law\" or \"table\"");
}

QuadratureSpec parse_quadrature(const json& j) {
  only_keys(j, "quadrature", {"method", "abs_tol", "rel_tol", "mc_samples", "seed", "max_evals", "grid_divisions"});
  QuadratureSpec q;
  if (j.contains("method"))
    q.method = guarded("quadrature.method", [&] { return parse_quadrature_method(text(j["method"], "method")); });
  if (j.contains("abs_tol")) q.abs_tol = number(j["abs_tol"], "quadrature.abs_tol");
  if (j.contains("rel_tol")) q.rel_tol = number(j["rel_tol"], "quadrature.rel_tol");
  if (j.contains("mc_samples")) q.mc_samples = unsigned_integer(j["mc_samples"], "quadrature.mc_samples");
  if (j.contains("seed")) q.seed = unsigned_integer(j["seed"], "quadrature.seed");
  if (j.contains("max_evals")) q.max_evals = unsigned_integer(j["max_evals"], "quadrature.max_evals");
  if (j.contains("grid_divisions"))
    q.grid_divisions = static_cast<int>(integer(j["grid_divisions"], "quadrature.grid_divisions"));
  guarded("quadrature", [&] {
    q.validate();
    return 0;
  });
  return q;
}

FunctionModel parse_extremal(const json& j, const Space& space, const Modulus& omega) {
  only_keys(j, "extremal", {"family", "h", "c", "sign"});
  const std::string family = text(field(j, "family", "extremal"), "extremal.family");
  auto h = [&] { return number(field(j, "h", "extremal"), "extremal.h"); };
  return guarded("extremal", [&]() -> FunctionModel {
    if (family == "f_eh") return make_f_eh(space, omega, h());
    if (family == "f_e_omega") return make_f_e_omega(space, omega, h());
    if (family == "g_eh") return make_g_eh(omega, h(), space.dim());
    if (family == "G_eh") return make_G_eh(omega, h(), space.dim());
    if (family == "f_omega") {
      const double c = j.contains("c") ? number(j["c"], "extremal.c") : 0.0;
      const auto sign = j.contains("sign") ? integer(j["sign"], "extremal.sign") : 1;
      return make_f_omega(space, omega, c, static_cast<int>(sign));
    }
    fail("extremal.family", "unknown family \"" + family + "\"");
  });
}

ExperimentConfig parse_config(const json& j) {
  only_keys(j, "config",
            {"space", "modulus", "h", "N", "theorem_id", "theorems", "kernel", "split_radius", "quadrature",
             "random_suite", "cross_checks", "extremal", "seed", "out", "format", "comment"});
  ExperimentConfig c;
  if (j.contains("quadrature")) c.quadrature = parse_quadrature(j["quadrature"]);
  if (j.contains("seed")) c.quadrature.seed = unsigned_integer(j["seed"], "seed");
  c.spaces = one_or_many<Space>(field(j, "space", "config"), parse_space);
  c.moduli = j.contains("modulus") ? one_or_many<Modulus>(j["modulus"], parse_modulus)
                                   : std::vector<Modulus>{Modulus::power(1.0)};
  if (j.contains("h")) c.h_values = numbers(j["h"], "h");
  if (j.contains("N")) c.N_values = numbers(j["N"], "N");
  if (j.contains("theorem_id") && j.contains("theorems")) fail("config", "give theorem_id or theorems, not both");
  if (j.contains("theorem_id")) c.theorems = parse_theorems(j["theorem_id"]);
  if (j.contains("theorems")) c.theorems = parse_theorems(j["theorems"]);
  if (j.contains("kernel")) {
    c.kernel = parse_kernel(j["kernel"]);
    c.kernel_given = true;
  }
  if (j.contains("split_radius")) {
    c.split_radius = number(j["split_radius"], "split_radius");
    if (!(c.split_radius > 0.0)) fail("split_radius", "must be positive");
  }
  if (j.contains("random_suite")) {
    const json& s = j["random_suite"];
    only_keys(s, "random_suite", {"trials", "seed", "seeds"});
    SuiteSettings settings;
    if (s.contains("trials")) settings.trials = unsigned_integer(s["trials"], "random_suite.trials");
    if (settings.trials == 0) fail("random_suite.trials", "must be >= 1");
    if (s.contains("seed") && s.contains("seeds")) fail("random_suite", "give seed or seeds, not both");
    if (s.contains("seed")) settings.seeds = {unsigned_integer(s["seed"], "random_suite.seed")};
    if (s.contains("seeds")) {
      if (!s["seeds"].is_array() || s["seeds"].empty()) fail("random_suite.seeds", "expected a nonempty array");
      settings.seeds.clear();
      for (const json& v : s["seeds"]) settings.seeds.push_back(unsigned_integer(v, "random_suite.seeds"));
    }
    c.suite = settings;
  }
  if (j.contains("cross_checks")) {
    if (!j["cross_checks"].is_array()) fail("cross_checks", "expected an array");
    for (const json& x : j["cross_checks"]) {
      only_keys(x, "cross_checks", {"op", "space", "modulus", "h", "kernel", "x", "samples", "seed"});
      CrossCheckSpec cc;
      cc.op = text(field(x, "op", "cross_checks"), "cross_checks.op");
      const auto& ops = cross_check_ops();
      if (std::find(ops.begin(), ops.end(), cc.op) == ops.end()) fail("cross_checks.op", "unknown op \"" + cc.op + "\"");
      cc.params.space = x.contains("space") ? parse_space(x["space"]) : c.spaces.front();
      cc.params.omega = x.contains("modulus") ? parse_modulus(x["modulus"]) : c.moduli.front();
      if (x.contains("h")) cc.params.h = number(x["h"], "cross_checks.h");
      if (x.contains("kernel")) cc.params.kernel = parse_kernel(x["kernel"]);
      if (x.contains("x")) cc.params.x = parse_point(x["x"], "cross_checks.x");
      if (x.contains("samples")) cc.samples = unsigned_integer(x["samples"], "cross_checks.samples");
      if (cc.samples < 2) fail("cross_checks.samples", "must be >= 2");
      cc.seed = x.contains("seed") ? unsigned_integer(x["seed"], "cross_checks.seed") : c.quadrature.seed;
      c.cross_checks.push_back(std::move(cc));
    }
  }
  if (j.contains("extremal"))  // validated against every space and modulus of the file
    for (const Space& s : c.spaces)
      for (const Modulus& w : c.moduli) parse_extremal(j["extremal"], s, w);
  if (j.contains("out")) c.out = text(j["out"], "out");
  if (j.contains("format")) c.format = text(j["format"], "format");
  if (c.format != "csv" && c.format != "json") fail("format", "expected \"csv\" or \"json\"");
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  json j;
  try {
    j = json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return parse_config(j);
}

}  // namespace sharp
