#include "json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace hhkit::cli {

namespace {

const json& require(const json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) {
    throw DomainError(std::string(what) + ": missing \"" + key + "\"");
  }
  return j.at(key);
}

std::vector<double> number_list(const json& j, const char* what) {
  if (!j.is_array()) throw DomainError(std::string(what) + ": expected an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) throw DomainError(std::string(what) + ": expected an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

std::vector<std::pair<double, double>> pair_list(const json& j, const char* what) {
  if (!j.is_array()) throw DomainError(std::string(what) + ": expected [[x, y], ...]");
  std::vector<std::pair<double, double>> out;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != 2 || !row[0].is_number() || !row[1].is_number()) {
      throw DomainError(std::string(what) + ": expected [[x, y], ...]");
    }
    out.emplace_back(row[0].get<double>(), row[1].get<double>());
  }
  return out;
}

// Integral exponents are written as integers so that [[1.0,1]] reads naturally.
json exponent_value(double q) {
  if (q == std::floor(q) && std::abs(q) < 9.0e15) return static_cast<long long>(q);
  return q;
}

PerturbBase base_from_string(const std::string& name) {
  if (name == "quadratic") return PerturbBase::quadratic;
  if (name == "abs") return PerturbBase::abs;
  if (name == "exp") return PerturbBase::exp;
  throw DomainError("unknown base '" + name + "' (expected quadratic, abs or exp)");
}

}  // namespace

json parse_json_argument(const std::string& text) {
  std::string body = text;
  if (!text.empty() && text.front() == '@') {
    std::ifstream in(text.substr(1));
    if (!in) throw DomainError("cannot open '" + text.substr(1) + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    body = buf.str();
  }
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("invalid JSON: ") + e.what());
  }
}

WeightFunction weight_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "constant") return WeightFunction::constant(1.0);
    throw DomainError("weight: unknown shorthand '" + j.get<std::string>() + "'");
  }
  const std::string kind = require(j, "kind", "weight").get<std::string>();
  if (kind == "constant") return WeightFunction::constant(j.value("value", 1.0));
  if (kind == "polynomial") {
    return WeightFunction::polynomial(number_list(require(j, "coefficients", "weight"), "weight"));
  }
  if (kind == "piecewise") {
    return WeightFunction::piecewise_linear(number_list(require(j, "knots", "weight"), "weight"),
                                            number_list(require(j, "values", "weight"), "weight"));
  }
  throw DomainError("weight: unknown kind '" + kind + "'");
}

json weight_to_json(const WeightFunction& rho) {
  const auto& rep = rho.representation();
  if (const auto* c = std::get_if<WeightFunction::Constant>(&rep)) {
    return {{"kind", "constant"}, {"value", c->value}};
  }
  if (const auto* p = std::get_if<WeightFunction::Polynomial>(&rep)) {
    return {{"kind", "polynomial"}, {"coefficients", p->coefficients}};
  }
  if (const auto* pl = std::get_if<WeightFunction::PiecewiseLinear>(&rep)) {
    return {{"kind", "piecewise"}, {"knots", pl->knots}, {"values", pl->values}};
  }
  throw DomainError("weight: callable weights have no JSON form");
}

PowerError power_from_json(const json& atoms) {
  std::vector<PowerAtom> out;
  for (const auto& [c, q] : pair_list(atoms, "atoms")) out.push_back({c, q});
  return PowerError(std::move(out));
}

json power_to_json(const PowerError& p) {
  json atoms = json::array();
  for (const auto& a : p.atoms()) atoms.push_back(json::array({a.coefficient, exponent_value(a.exponent)}));
  return atoms;
}

RadialErrorFunction error_from_json(const json& j) {
  if (j.is_array()) return RadialErrorFunction::power(power_from_json(j));
  const std::string kind = j.is_object() && j.contains("kind") ? j.at("kind").get<std::string>()
                           : j.is_object() && j.contains("atoms") ? "power"
                                                                  : "";
  if (kind == "power") return RadialErrorFunction::power(power_from_json(require(j, "atoms", "error")));
  if (kind == "constant") return RadialErrorFunction::constant(require(j, "value", "error").get<double>());
  if (kind == "profile") {
    RadialFlags flags;
    flags.radially_increasing = j.value("increasing", false);
    return RadialErrorFunction::from_samples(pair_list(require(j, "samples", "error"), "samples"), flags);
  }
  throw DomainError("error: expected kind power, constant or profile");
}

SegmentFunction function_from_json(const json& j) {
  const std::string kind = require(j, "kind", "function").get<std::string>();
  const double radius = j.value("radius", 1.0);
  if (kind == "perturbed") {
    return make_perturbed_convex(base_from_string(j.value("base", "quadratic")),
                                 require(j, "epsilon", "function").get<double>(),
                                 j.value("seed", std::uint64_t{0}), j.value("adversarial", false), radius);
  }
  if (kind == "power_premise") {
    return make_power_premise_function(base_from_string(j.value("base", "quadratic")),
                                       require(j, "a", "function").get<double>(),
                                       require(j, "q", "function").get<double>(),
                                       j.value("seed", std::uint64_t{0}), radius);
  }
  if (kind == "polynomial") {
    const auto coeffs = number_list(require(j, "coefficients", "function"), "function");
    SegmentFunction f;
    f.g = [coeffs](double t) {
      double acc = 0.0;
      for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + *it;
      return acc;
    };
    f.radius = radius;
    f.label = "polynomial";
    f.validate();
    return f;
  }
  throw DomainError("function: unknown kind '" + kind + "'");
}

json report_to_json(const CheckReport& r) {
  json witness = json::object();
  for (std::size_t i = 0; i < r.witness.size() && i < r.witness_names.size(); ++i) {
    witness[r.witness_names[i]] = r.witness[i];
  }
  return {{"check", r.check},
          {"pass", r.pass},
          {"max_violation", r.max_violation},
          {"tolerance", r.tolerance},
          {"samples_checked", r.samples_checked},
          {"witness", witness}};
}

CheckReport report_from_json(const json& j) {
  CheckReport r;
  r.check = require(j, "check", "report").get<std::string>();
  r.pass = require(j, "pass", "report").get<bool>();
  const json& v = require(j, "max_violation", "report");
  r.max_violation = v.is_null() ? -HUGE_VAL : v.get<double>();
  r.tolerance = require(j, "tolerance", "report").get<double>();
  r.samples_checked = require(j, "samples_checked", "report").get<long long>();
  for (const auto& [name, value] : require(j, "witness", "report").items()) {
    r.witness_names.push_back(name);
    r.witness.push_back(value.get<double>());
  }
  return r;
}

json theorem_report_to_json(const TheoremReport& r) {
  json out{{"theorem", to_string(r.theorem)},
           {"status", to_string(r.status)},
           {"premise", report_to_json(r.premise)},
           {"transformed", r.transformed}};
  if (r.status != TheoremStatus::premise_failed) out["conclusion"] = report_to_json(r.conclusion);
  return out;
}

}  // namespace hhkit::cli
