#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>

#include "CLI11.hpp"
#include "json_io.hpp"

namespace hhkit::cli {

namespace {

constexpr double kDefaultQuadTol = 1e-9;

// CSV and text output: '.' decimal point and 12 significant digits whatever
// the locale, so that runs diff cleanly.
std::string num(double v, int digits = 12) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

// Flag > environment > default.
double resolve_quad_tol(std::optional<double> flag) {
  if (flag) {
    if (!(*flag > 0.0)) throw DomainError("--quad-tol must be > 0");
    return *flag;
  }
  if (const char* env = std::getenv("HHKIT_QUAD_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0) || !std::isfinite(v)) {
      throw DomainError(std::string("HHKIT_QUAD_TOL must be a positive number, got '") + env + "'");
    }
    return v;
  }
  return kDefaultQuadTol;
}

WeightFunction weight_argument(const std::string& text, const QuadratureSpec& spec) {
  const json j = text == "constant" ? json(text) : parse_json_argument(text);
  return validate_weight(weight_from_json(j), spec);
}

std::vector<double> grid_points(int points) {
  if (points < 2) throw DomainError("--points must be >= 2");
  std::vector<double> t(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) t[i] = static_cast<double>(i) / (points - 1);
  return t;
}

struct Options {
  std::optional<double> quad_tol;
  std::string format = "csv";

  // eval-takagi
  std::string kind = "T";
  double q = 1.0;
  int points = 11;
  double tail_tol = 1e-10;

  // build-psi, transform, verify
  std::string weight = "constant";
  int terms = PsiKernel::kDefaultTerms;
  std::string direction;
  std::string atoms;
  std::string error;
  std::string method = "series";
  std::vector<double> radii;
  int iterations = 60;
  std::string scenario;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
};

int eval_takagi(const Options& o, std::ostream& out) {
  if (o.kind != "T" && o.kind != "S" && o.kind != "both") throw DomainError("--kind must be T, S or both");
  const TakagiParams params{o.q, o.tail_tol};
  params.validate();
  const auto ts = grid_points(o.points);
  if (o.format == "json") {
    json rows = json::array();
    for (double t : ts) {
      json row{{"t", t}};
      if (o.kind != "S") row["T"] = takagi_T(params, t);
      if (o.kind != "T") row["S"] = takagi_S(params, t);
      rows.push_back(row);
    }
    out << json{{"q", o.q}, {"tail_tol", o.tail_tol}, {"rows", rows}}.dump() << '\n';
    return kSuccess;
  }
  out << (o.kind == "both" ? "t,T,S" : "t,value") << '\n';
  for (double t : ts) {
    out << num(t);
    if (o.kind != "S") out << ',' << num(takagi_T(params, t));
    if (o.kind != "T") out << ',' << num(takagi_S(params, t));
    out << '\n';
  }
  return kSuccess;
}

int build_psi_cmd(const Options& o, const QuadratureSpec& spec, std::ostream& out) {
  const WeightFunction rho = weight_argument(o.weight, spec);
  const PsiKernel psi = build_psi(rho, o.terms);
  const auto ts = grid_points(o.points);
  if (o.format == "json") {
    json samples = json::array();
    for (double t : ts) samples.push_back(json::array({t, psi(t)}));
    const PsiIntegrals ids = psi_lambda_identities(psi, spec);
    out << json{{"weight", weight_to_json(rho)},
                {"terms", o.terms},
                {"lambda", lambda_of(rho, spec)},
                {"l1_tail_bound", psi.l1_tail_bound()},
                {"integral", ids.total},
                {"upper_half", ids.upper_half},
                {"samples", samples}}
               .dump()
        << '\n';
    return kSuccess;
  }
  out << "t,value\n";
  for (double t : ts) out << num(t) << ',' << num(psi(t)) << '\n';
  return kSuccess;
}

RadialErrorFunction transform_input(const Options& o) {
  if (!o.atoms.empty() && !o.error.empty()) throw DomainError("give either --atoms or --error, not both");
  if (!o.atoms.empty()) return RadialErrorFunction::power(power_from_json(parse_json_argument(o.atoms)));
  if (!o.error.empty()) return error_from_json(parse_json_argument(o.error));
  throw DomainError("transform needs --atoms or --error");
}

std::vector<double> profile_radii(const Options& o, const RadialErrorFunction& alpha) {
  if (!o.radii.empty()) return o.radii;
  std::vector<double> r;
  for (const auto& s : alpha.samples()) r.push_back(s.first);
  if (r.empty()) throw DomainError("--radii is required for this error term");
  return r;
}

int transform(const Options& o, const QuadratureSpec& spec, std::ostream& out) {
  const RadialErrorFunction alpha = transform_input(o);
  const WeightFunction rho = weight_argument(o.weight, spec);
  const double lambda = lambda_of(rho, spec);
  const auto& power = alpha.power_form();
  // Power inputs are mapped atom by atom; power inputs given with --radii
  // and all other error terms are tabulated.
  const bool atomwise = power.has_value() && o.radii.empty();

  if (o.direction == "jensen-to-hh") {
    if (atomwise) {
      if (o.kind != "T" && o.kind != "S") throw DomainError("--kind must be T or S");
      const auto kind = o.kind == "T" ? TakagiKind::T : TakagiKind::S;
      out << json{{"atoms", power_to_json(jensen_to_hh_power(*power, rho, kind, spec))}, {"lambda", lambda}}.dump()
          << '\n';
      return kSuccess;
    }
    if (o.method != "series" && o.method != "tabor") throw DomainError("--method must be series or tabor");
    json samples = json::array();
    bool certified = true;
    for (double r : profile_radii(o, alpha)) {
      const UpperHHTransform t = o.method == "series" ? jensen_to_upper_hh_series(alpha, rho, r, 1e-10, spec)
                                                      : jensen_to_upper_hh_tabor(alpha, rho, r, 1e-10, spec);
      certified = certified && t.certified;
      samples.push_back(json::array({r, t.alpha_h}));
    }
    out << json{{"kind", "profile"}, {"samples", samples}, {"lambda", lambda}, {"certified", certified}}.dump()
        << '\n';
    return kSuccess;
  }

  if (o.direction == "jensen-to-lower-hh") {
    if (atomwise) {
      std::vector<PowerAtom> atoms;
      for (const auto& a : power->atoms()) atoms.push_back({a.coefficient / (a.exponent + 1.0), a.exponent});
      out << json{{"atoms", power_to_json(PowerError(atoms))}}.dump() << '\n';
      return kSuccess;
    }
    json samples = json::array();
    for (double r : profile_radii(o, alpha)) samples.push_back(json::array({r, jensen_to_lower_hh(alpha, r, spec)}));
    out << json{{"kind", "profile"}, {"samples", samples}}.dump() << '\n';
    return kSuccess;
  }

  if (o.direction == "hh-to-jensen") {
    if (atomwise) {
      out << json{{"atoms", power_to_json(hh_to_jensen_power(*power, rho, spec))}, {"lambda", lambda}}.dump()
          << '\n';
      return kSuccess;
    }
    // No closed form for general α_H: report the iterate α_n at each radius.
    json samples = json::array();
    for (double r : profile_radii(o, alpha)) {
      const IterationReport it = hh_to_jensen_iterate(alpha, rho, r, o.iterations, spec);
      samples.push_back(json::array({r, it.values.back()}));
    }
    out << json{{"kind", "profile"}, {"samples", samples}, {"lambda", lambda}, {"iterations", o.iterations}}.dump()
        << '\n';
    return kSuccess;
  }
  throw DomainError("--direction must be jensen-to-hh, jensen-to-lower-hh or hh-to-jensen");
}

int verify(const Options& o, const QuadratureSpec& spec, std::ostream& out) {
  if (o.scenario.empty()) throw DomainError("verify needs --scenario");
  json sc = parse_json_argument(o.scenario);
  if (!sc.is_object() || !sc.contains("function")) throw DomainError("scenario: missing \"function\"");
  json fn = sc.at("function");
  if (o.seed) fn["seed"] = *o.seed;
  const SegmentFunction f = function_from_json(fn);
  const WeightFunction rho =
      validate_weight(weight_from_json(sc.contains("weight") ? sc.at("weight") : json("constant")), spec);
  const int grid = sc.value("grid", 65);
  const double tol = sc.value("tol", 1e-5);
  set_lab_threads(o.threads);

  auto error_term = [&](const char* key) -> std::optional<RadialErrorFunction> {
    if (sc.contains(key)) return error_from_json(sc.at(key));
    if (sc.contains("error")) return error_from_json(sc.at("error"));
    return std::nullopt;
  };
  auto required = [&](const char* key) {
    auto e = error_term(key);
    if (!e) throw DomainError(std::string("scenario: missing \"") + key + "\" (or \"error\")");
    return *e;
  };

  if (sc.contains("check")) {
    const std::string check = sc.at("check").get<std::string>();
    CheckReport r;
    if (check == "jensen") {
      r = check_jensen(f, required("alpha_j"), grid, tol);
    } else if (check == "upper_hh") {
      r = check_upper_hh(f, rho, sc.value("lambda", lambda_of(rho, spec)), required("alpha_h"), grid, spec, tol);
    } else if (check == "lower_hh") {
      r = check_lower_hh(f, required("alpha_h"), grid, spec, tol);
    } else if (check == "symmetrized_hh") {
      r = check_symmetrized_hh(f, rho, required("alpha_h"), grid, spec, tol);
    } else {
      throw DomainError("scenario: unknown check '" + check + "'");
    }
    out << report_to_json(r).dump() << '\n';
    return r.pass ? kSuccess : kCheckFailed;
  }

  if (!sc.contains("theorem")) throw DomainError("scenario: needs \"theorem\" or \"check\"");
  const Theorem theorem = theorem_from_string(sc.at("theorem").get<std::string>());
  TheoremInputs in;
  in.rho = rho;
  in.grid = grid;
  in.tol = tol;
  in.tail_tol = sc.value("tail_tol", in.tail_tol);
  if (theorem == Theorem::thmA1 || theorem == Theorem::corA1) {
    in.alpha_h = required("alpha_h");
  } else {
    in.alpha_j = required("alpha_j");
  }
  if (sc.contains("lambda")) in.lambda = sc.at("lambda").get<double>();
  if (sc.contains("growth")) {
    const json& g = sc.at("growth");
    in.growth = GrowthBound{g.value("c", 1.0), g.value("p", 1.0)};
  }
  const TheoremReport r = end_to_end_theorem_check(theorem, f, in, spec);
  out << theorem_report_to_json(r).dump() << '\n';
  return r.pass() ? kSuccess : kCheckFailed;
}

int compare(const Options& o, std::ostream& out) {
  const ConstantComparison c = compare_constants(o.q);
  if (o.format == "json") {
    out << json{{"q", o.q}, {"ordering", to_string(c.ordering)}, {"t_constant", c.t_constant},
                {"s_constant", c.s_constant}}
               .dump()
        << '\n';
  } else {
    out << to_string(c.ordering) << ' ' << num(c.t_constant, 10) << ' ' << num(c.s_constant, 10) << '\n';
  }
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Jensen and Hermite-Hadamard error-term calculus"};
  app.name("hhkit");
  app.require_subcommand(1);
  Options o;
  app.add_option("--quad-tol", o.quad_tol, "Quadrature tolerance (overrides HHKIT_QUAD_TOL; default 1e-9)");

  auto* takagi = app.add_subcommand("eval-takagi", "Tabulate T_q and/or S_q on [0, 1]");
  takagi->add_option("--kind", o.kind, "T, S or both")->check(CLI::IsMember({"T", "S", "both"}));
  takagi->add_option("--q", o.q, "Exponent q > 0");
  takagi->add_option("--points", o.points, "Number of equally spaced points");
  takagi->add_option("--tail-tol", o.tail_tol, "Series truncation tolerance");
  takagi->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));

  auto* psi = app.add_subcommand("build-psi", "Tabulate the psi kernel of a weight");
  psi->add_option("--weight", o.weight, "Weight spec (JSON, @file or 'constant')");
  psi->add_option("--terms", o.terms, "Number of dyadic levels");
  psi->add_option("--points", o.points, "Number of equally spaced points");
  psi->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));

  auto* tr = app.add_subcommand("transform", "Map an error term between the Jensen and HH sides");
  tr->add_option("--direction", o.direction, "jensen-to-hh, jensen-to-lower-hh or hh-to-jensen")->required();
  tr->add_option("--atoms", o.atoms, "Power atoms [[c,q],...]");
  tr->add_option("--error", o.error, "Error spec (JSON or @file)");
  tr->add_option("--weight", o.weight, "Weight spec (JSON, @file or 'constant')");
  tr->add_option("--kind", o.kind, "T or S (power inputs)");
  tr->add_option("--method", o.method, "series or tabor (tabulated inputs)");
  tr->add_option("--radii", o.radii, "Radii at which to tabulate");
  tr->add_option("--iterations", o.iterations, "Iterations for hh-to-jensen on tabulated inputs");

  auto* ver = app.add_subcommand("verify", "Check a scenario and emit a report");
  ver->add_option("--scenario", o.scenario, "Scenario JSON or @file")->required();
  ver->add_option("--seed", o.seed, "Overrides the function seed");
  ver->add_option("--threads", o.threads, "Worker threads (0 = hardware concurrency)");

  auto* cmp = app.add_subcommand("compare-constants", "Order the T and S constants for exponent q");
  cmp->add_option("--q", o.q, "Exponent q > 0")->required();
  cmp->add_option("--format", o.format)->check(CLI::IsMember({"text", "json"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    QuadratureSpec spec;
    spec.abs_tol = resolve_quad_tol(o.quad_tol);
    if (*takagi) return eval_takagi(o, out);
    if (*psi) return build_psi_cmd(o, spec, out);
    if (*tr) return transform(o, spec, out);
    if (*ver) return verify(o, spec, out);
    if (*cmp) {
      if (o.format == "csv") o.format = "text";
      return compare(o, out);
    }
  } catch (const std::exception& e) {
    err << "hhkit: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace hhkit::cli
