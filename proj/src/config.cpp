#include "berglab/config.hpp"

#include <fstream>
#include <set>

namespace berglab::cfg {

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& item : obj.items()) {
    if (!ok.count(item.key()))
      throw ConfigError(where + ": unknown field \"" + item.key() + "\"");
  }
}

double require_number(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key))
    throw ConfigError(where + ": missing required field \"" + key + "\"");
  if (!obj.at(key).is_number())
    throw ConfigError(where + ": field \"" + key + "\" must be a number");
  return obj.at(key).get<double>();
}

double number_or(const json& obj, const char* key, double fallback,
                 const std::string& where) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_number())
    throw ConfigError(where + ": field \"" + key + "\" must be a number");
  return obj.at(key).get<double>();
}

int int_or(const json& obj, const char* key, int fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_number_integer())
    throw ConfigError(where + ": field \"" + key + "\" must be an integer");
  return obj.at(key).get<int>();
}

std::string require_string(const json& obj, const char* key,
                           const std::string& where) {
  if (!obj.contains(key))
    throw ConfigError(where + ": missing required field \"" + key + "\"");
  if (!obj.at(key).is_string())
    throw ConfigError(where + ": field \"" + key + "\" must be a string");
  return obj.at(key).get<std::string>();
}

cplx parse_complex(const json& v, const std::string& where) {
  if (v.is_number()) return cplx(v.get<double>(), 0.0);
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return cplx(v[0].get<double>(), v[1].get<double>());
  throw ConfigError(where + ": expected a number or [re, im] pair");
}

Weight parse_weight(const json& spec) {
  const std::string where = "weight";
  if (!spec.is_object()) throw ConfigError(where + ": expected an object");
  const std::string kind = require_string(spec, "kind", where);
  try {
    if (kind == "standard") {
      check_keys(spec, {"kind", "alpha"}, where);
      return standard_weight(require_number(spec, "alpha", where));
    }
    if (kind == "radial_power") {
      check_keys(spec, {"kind", "alpha"}, where);
      return radial_power_weight(require_number(spec, "alpha", where));
    }
    if (kind == "exp_radial") {
      check_keys(spec, {"kind", "c"}, where);
      return exp_radial_weight(require_number(spec, "c", where));
    }
    if (kind == "spiral_w") {
      check_keys(spec, {"kind", "epsilon"}, where);
      return spiral_w_weight(require_number(spec, "epsilon", where));
    }
    if (kind == "stolz_indicator") {
      check_keys(spec, {"kind"}, where);
      return stolz_indicator_weight();
    }
    if (kind == "beta_shift") {
      check_keys(spec, {"kind", "base", "beta"}, where);
      if (!spec.contains("base")) throw ConfigError(where + ": missing base weight");
      return beta_shift(parse_weight(spec.at("base")),
                        require_number(spec, "beta", where));
    }
    if (kind == "tilde") {
      check_keys(spec, {"kind", "base"}, where);
      if (!spec.contains("base")) throw ConfigError(where + ": missing base weight");
      return tilde_average(parse_weight(spec.at("base")));
    }
    if (kind == "horizontal") {
      check_keys(spec, {"kind", "base", "r"}, where);
      if (!spec.contains("base")) throw ConfigError(where + ": missing base weight");
      return horizontal_average(parse_weight(spec.at("base")),
                                require_number(spec, "r", where));
    }
    if (kind == "exp_twist") {
      check_keys(spec, {"kind", "base", "symbol", "lambda", "p"}, where);
      if (!spec.contains("base") || !spec.contains("symbol"))
        throw ConfigError(where + ": exp_twist needs base and symbol");
      return exponential_twist(parse_weight(spec.at("base")),
                               parse_function(spec.at("symbol")),
                               parse_complex(spec.at("lambda"), where),
                               require_number(spec, "p", where));
    }
    if (kind == "product") {
      check_keys(spec, {"kind", "factors"}, where);
      if (!spec.contains("factors") || !spec.at("factors").is_array() ||
          spec.at("factors").size() != 2)
        throw ConfigError(where + ": product needs a two-element factors array");
      return product_weight(parse_weight(spec.at("factors")[0]),
                            parse_weight(spec.at("factors")[1]));
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where + ": " + e.what());
  }
  throw ConfigError(where + ": unknown kind \"" + kind + "\"");
}

AnalyticFunction parse_function(const json& spec) {
  const std::string where = "function";
  if (!spec.is_object()) throw ConfigError(where + ": expected an object");
  const std::string family = require_string(spec, "family", where);
  try {
    if (family == "constant") {
      check_keys(spec, {"family", "c"}, where);
      if (!spec.contains("c")) throw ConfigError(where + ": constant needs c");
      return AnalyticFunction::constant(parse_complex(spec.at("c"), where));
    }
    if (family == "polynomial") {
      check_keys(spec, {"family", "coefficients"}, where);
      if (!spec.contains("coefficients") || !spec.at("coefficients").is_array())
        throw ConfigError(where + ": polynomial needs a coefficients array");
      std::vector<cplx> coeffs;
      for (const auto& c : spec.at("coefficients"))
        coeffs.push_back(parse_complex(c, where));
      return AnalyticFunction::polynomial(std::move(coeffs));
    }
    if (family == "monomial") {
      check_keys(spec, {"family", "n", "c"}, where);
      const int n = int_or(spec, "n", -1, where);
      if (n < 0) throw ConfigError(where + ": monomial needs n >= 0");
      cplx c{1.0, 0.0};
      if (spec.contains("c")) c = parse_complex(spec.at("c"), where);
      return AnalyticFunction::monomial(n, c);
    }
    if (family == "kernel_power") {
      check_keys(spec, {"family", "a", "exponent"}, where);
      if (!spec.contains("a")) throw ConfigError(where + ": kernel_power needs a");
      return AnalyticFunction::kernel_power(
          DiscPoint(parse_complex(spec.at("a"), where)),
          require_number(spec, "exponent", where));
    }
    if (family == "log_kernel") {
      check_keys(spec, {"family", "a"}, where);
      if (!spec.contains("a")) throw ConfigError(where + ": log_kernel needs a");
      return AnalyticFunction::log_kernel(parse_complex(spec.at("a"), where));
    }
    if (family == "exp_of") {
      check_keys(spec, {"family", "inner", "scale"}, where);
      if (!spec.contains("inner")) throw ConfigError(where + ": exp_of needs inner");
      cplx s{1.0, 0.0};
      if (spec.contains("scale")) s = parse_complex(spec.at("scale"), where);
      return AnalyticFunction::exp_of(parse_function(spec.at("inner")), s);
    }
    if (family == "scale") {
      check_keys(spec, {"family", "inner", "c"}, where);
      if (!spec.contains("inner") || !spec.contains("c"))
        throw ConfigError(where + ": scale needs inner and c");
      return AnalyticFunction::scale(parse_function(spec.at("inner")),
                                     parse_complex(spec.at("c"), where));
    }
    if (family == "sum" || family == "product") {
      check_keys(spec, {"family", "terms"}, where);
      if (!spec.contains("terms") || !spec.at("terms").is_array() ||
          spec.at("terms").empty())
        throw ConfigError(where + ": " + family + " needs a terms array");
      AnalyticFunction acc = parse_function(spec.at("terms")[0]);
      for (std::size_t i = 1; i < spec.at("terms").size(); ++i) {
        const AnalyticFunction next = parse_function(spec.at("terms")[i]);
        acc = family == "sum" ? acc + next : acc * next;
      }
      return acc;
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where + ": " + e.what());
  }
  throw ConfigError(where + ": unknown family \"" + family + "\"");
}

SquareFamily parse_family(const json& spec) {
  const std::string where = "family";
  if (spec.is_null()) return SquareFamily::dyadic(8);
  check_keys(spec, {"kind", "depth", "angle"}, where);
  const std::string kind =
      spec.contains("kind") ? require_string(spec, "kind", where) : "dyadic";
  const int depth = int_or(spec, "depth", 8, where);
  if (depth < 1 || depth > 16)
    throw ConfigError(where + ": depth must lie in [1, 16]");
  try {
    if (kind == "dyadic") return SquareFamily::dyadic(depth);
    if (kind == "ray")
      return SquareFamily::ray(depth, number_or(spec, "angle", 0.0, where));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where + ": " + e.what());
  }
  throw ConfigError(where + ": unknown kind \"" + kind + "\"");
}

QuadratureSpec parse_quadrature(const json& spec) {
  QuadratureSpec q;
  if (spec.is_null()) return q;
  const std::string where = "quadrature";
  check_keys(spec,
             {"relative_tolerance", "max_annuli", "nodes_per_cell",
              "boundary_exponent_hint", "max_subdivision_depth", "max_cells"},
             where);
  q.relative_tolerance =
      number_or(spec, "relative_tolerance", q.relative_tolerance, where);
  if (!(q.relative_tolerance > 0.0))
    throw ConfigError(where + ": relative_tolerance must be > 0");
  q.max_annuli = int_or(spec, "max_annuli", q.max_annuli, where);
  if (q.max_annuli < 4) throw ConfigError(where + ": max_annuli must be >= 4");
  q.nodes_per_cell = int_or(spec, "nodes_per_cell", q.nodes_per_cell, where);
  if (q.nodes_per_cell < 4)
    throw ConfigError(where + ": nodes_per_cell must be >= 4");
  if (spec.contains("boundary_exponent_hint")) {
    const double h = require_number(spec, "boundary_exponent_hint", where);
    if (!(h > -1.0))
      throw ConfigError(where + ": boundary_exponent_hint must be > -1");
    q.boundary_exponent_hint = h;
  }
  q.max_subdivision_depth =
      int_or(spec, "max_subdivision_depth", q.max_subdivision_depth, where);
  q.max_cells = int_or(spec, "max_cells", static_cast<int>(q.max_cells), where);
  return q;
}

DiscMeasure parse_measure(const json& spec) {
  const std::string where = "measure";
  if (!spec.is_object()) throw ConfigError(where + ": expected an object");
  const std::string kind = require_string(spec, "kind", where);
  if (kind == "density") {
    check_keys(spec, {"kind", "weight"}, where);
    if (!spec.contains("weight"))
      throw ConfigError(where + ": density measure needs a weight");
    return DiscMeasure::from_density(parse_weight(spec.at("weight")));
  }
  if (kind == "atoms") {
    check_keys(spec, {"kind", "atoms"}, where);
    if (!spec.contains("atoms") || !spec.at("atoms").is_array())
      throw ConfigError(where + ": atoms measure needs an atoms array");
    std::vector<DiscMeasure::Atom> atoms;
    for (const auto& a : spec.at("atoms")) {
      check_keys(a, {"re", "im", "mass"}, where + ".atom");
      DiscMeasure::Atom atom{DiscPoint(require_number(a, "re", where),
                                       number_or(a, "im", 0.0, where)),
                             require_number(a, "mass", where)};
      atoms.push_back(atom);
    }
    try {
      return DiscMeasure::from_atoms(std::move(atoms));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(where + ": " + e.what());
    }
  }
  throw ConfigError(where + ": unknown kind \"" + kind + "\"");
}

std::vector<AnalyticFunction> parse_suite(const json& spec, double p) {
  const std::string where = "suite";
  if (spec.is_null()) return default_suite(p, 4.0 * p, 6, 16);
  if (spec.is_array()) {
    std::vector<AnalyticFunction> suite;
    for (const auto& f : spec) suite.push_back(parse_function(f));
    if (suite.empty()) throw ConfigError(where + ": suite must be nonempty");
    return suite;
  }
  check_keys(spec, {"kind", "depth", "max_monomial", "gamma"}, where);
  const std::string kind =
      spec.contains("kind") ? require_string(spec, "kind", where) : "default";
  if (kind != "default") throw ConfigError(where + ": unknown kind \"" + kind + "\"");
  const int depth = int_or(spec, "depth", 6, where);
  const int max_monomial = int_or(spec, "max_monomial", 16, where);
  const double gamma = number_or(spec, "gamma", 4.0 * p, where);
  if (depth < 1 || max_monomial < 0 || !(gamma > 0.0))
    throw ConfigError(where + ": invalid suite parameters");
  return default_suite(p, gamma, depth, max_monomial);
}

json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open \"" + path + "\"");
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config: parse error: ") + e.what());
  }
  return j;
}

std::string catalog_text() {
  // Sorted by label.
  return
      "functions:\n"
      "  constant          {c: complex}\n"
      "  exp_of            {inner: function, scale: complex}\n"
      "  kernel_power      {a: complex in the disc, exponent: > 0}\n"
      "  log_kernel        {a: complex, |a| <= 1}\n"
      "  monomial          {n: int >= 0, c: complex}\n"
      "  polynomial        {coefficients: [complex...]}\n"
      "  product           {terms: [function...]}\n"
      "  scale             {inner: function, c: complex}\n"
      "  sum               {terms: [function...]}\n"
      "weights:\n"
      "  beta_shift        {base: weight, beta: > -1 - boundary exponent}\n"
      "  exp_radial        {c: > 0}            exp(-c/(1-|z|))\n"
      "  exp_twist         {base, symbol, lambda: complex != 0, p: > 0}\n"
      "  horizontal        {base: weight, r: (0,1)}\n"
      "  product           {factors: [weight, weight]}\n"
      "  radial_power      {alpha: > -1}       (1-|z|)^alpha\n"
      "  spiral_w          {epsilon: (0,1)}    (1-r)^(eps/2-1) |theta|^(eps/2-1)\n"
      "  standard          {alpha: > -1}       (alpha+1)(1-|z|^2)^alpha\n"
      "  stolz_indicator   {}                  indicator off the nontangential region at 1\n"
      "  tilde             {base: weight}      square average w(S(z))/(1-|z|)^2\n";
}

}  // namespace berglab::cfg
