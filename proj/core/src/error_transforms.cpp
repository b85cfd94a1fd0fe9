#include "hhkit/error_transforms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hhkit/phi_calculus.hpp"
#include "hhkit/weight_kernel.hpp"

namespace hhkit {

namespace {

constexpr int kMaxSeriesTerms = 1100;

// Smallest endpoint exponent of α_J(x r) at x = 0, in the sense of
// integrate_endpoint_singular.
double left_exponent(const RadialErrorFunction& alpha) {
  if (const auto& form = alpha.power_form()) {
    double e = 1.0;
    for (const auto& a : form->atoms()) e = std::min(e, a.exponent + 1.0);
    return e;
  }
  return 1.0;
}

// ∫_0^1 α(x r) w(x) dx.
IntegralResult radial_moment(const RadialErrorFunction& alpha, double r, const ScalarFunction& w,
                             const QuadratureSpec& spec) {
  QuadratureSpec inner = spec.without_singularity();
  inner.max_panels = std::max(inner.max_panels, 20000);
  return integrate_endpoint_singular([&](double x) { return alpha(x * r) * w(x); }, 0.0, 1.0,
                                     left_exponent(alpha), 1.0, inner);
}

// Symmetrised weight φ(x) = (ρ((1+x)/2) + ρ((1-x)/2)) / 2 on (0, 1).
double symmetric_weight(const WeightFunction& rho, double x) {
  return 0.5 * (rho(0.5 * (1.0 + x)) + rho(0.5 * (1.0 - x)));
}

std::vector<double> symmetric_breakpoints(const WeightFunction& rho) {
  std::vector<double> cuts;
  for (double b : rho.breakpoints()) {
    const double x = std::abs(2.0 * b - 1.0);
    if (x > 0.0 && x < 1.0) cuts.push_back(x);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

// ∫_0^1 α(|1-2t| r) ρ(t) dt = ∫_0^1 α(x r) φ(x) dx.
double reflected_moment(const RadialErrorFunction& alpha, const WeightFunction& rho, double r,
                        const QuadratureSpec& spec) {
  if (auto c = alpha.constant_value()) return *c * rho.declared_integral();
  if (rho.is_constant()) {
    if (const auto& form = alpha.power_form()) {
      double acc = 0.0;
      for (const auto& a : form->atoms()) acc += a.coefficient * std::pow(r, a.exponent) / (a.exponent + 1.0);
      return acc * rho(0.5);
    }
  }
  QuadratureSpec inner = spec.without_singularity();
  inner.max_panels = std::max(inner.max_panels, 20000);
  const auto cuts = symmetric_breakpoints(rho);
  return integrate([&](double x) { return alpha(x * r) * symmetric_weight(rho, x); }, 0.0, 1.0,
                   cuts, inner)
      .value;
}

}  // namespace

UpperHHTransform jensen_to_upper_hh_series(const RadialErrorFunction& alpha_j,
                                           const WeightFunction& rho, double r, double tail_tol,
                                           const QuadratureSpec& spec) {
  if (!(r >= 0.0)) throw DomainError("jensen_to_upper_hh_series: r must be >= 0");
  if (!(tail_tol > 0.0)) throw DomainError("jensen_to_upper_hh_series: tail_tol must be > 0");
  spec.validate();
  UpperHHTransform out;
  out.lambda = lambda_of(rho, spec);

  const SupEstimate sup = alpha_j.sup_on(r);
  out.certified = sup.certified;
  const double mass = std::abs(rho.declared_integral());
  if (sup.value == 0.0 || mass == 0.0) return out;
  int terms = 1;
  while (sup.value * mass * std::ldexp(2.0, -terms) >= tail_tol && terms < kMaxSeriesTerms) ++terms;
  out.terms = terms;
  out.tail_bound = sup.value * mass * std::ldexp(2.0, -terms);

  if (auto c = alpha_j.constant_value()) {
    // Each level integral is c ∫ρ exactly.
    out.alpha_h = *c * rho.declared_integral() * (2.0 - std::ldexp(2.0, -terms));
    return out;
  }

  QuadratureSpec level_spec = spec;
  level_spec.abs_tol = spec.abs_tol / terms;
  // Beyond the exact levels (and at every level for constant ρ) the tent
  // average is ∫ρ, so those levels share one integral.
  std::optional<double> flat;
  auto flat_level = [&]() {
    if (!flat) {
      flat = rho.declared_integral() *
             radial_moment(alpha_j, r, [](double) { return 1.0; }, level_spec).value;
    }
    return *flat;
  };
  for (int n = 0; n < terms; ++n) {
    double level = 0.0;
    if (rho.is_constant() || n > WeightFunction::kExactLevels) {
      level = flat_level();
    } else {
      level = radial_moment(alpha_j, r, [&](double x) { return rho.tent_average(x, n); }, level_spec)
                  .value;
    }
    out.alpha_h += std::ldexp(level, -n);
  }
  return out;
}

UpperHHTransform jensen_to_upper_hh_tabor(const RadialErrorFunction& alpha_j,
                                          const WeightFunction& rho, double r, double tail_tol,
                                          const QuadratureSpec& spec) {
  if (!(r >= 0.0)) throw DomainError("jensen_to_upper_hh_tabor: r must be >= 0");
  if (!(tail_tol > 0.0)) throw DomainError("jensen_to_upper_hh_tabor: tail_tol must be > 0");
  if (!alpha_j.flags().radially_increasing) {
    throw DomainError("jensen_to_upper_hh_tabor: error term must be radially increasing");
  }
  spec.validate();
  UpperHHTransform out;
  out.lambda = lambda_of(rho, spec);
  const double mass = std::abs(rho.declared_integral());

  int terms = 0;
  if (const auto& form = alpha_j.power_form()) {
    // Σ_{n>=N} α_J(r/2^n) = Σ_i c_i r^{q_i} 2^{-N q_i} / (1 - 2^{-q_i}).
    auto tail = [&](int n) {
      double acc = 0.0;
      for (const auto& a : form->atoms()) {
        acc += std::abs(a.coefficient) * std::pow(r, a.exponent) * std::exp2(-n * a.exponent) /
               (1.0 - std::exp2(-a.exponent));
      }
      return acc * mass;
    };
    while (tail(terms) >= tail_tol && terms < kMaxSeriesTerms) ++terms;
    if (tail(terms) >= tail_tol) {
      throw DivergenceError("jensen_to_upper_hh_tabor: tail did not fall below tolerance");
    }
    out.tail_bound = tail(terms);
  } else {
    out.certified = false;
    // Cauchy test on Σ α_J(r/2^n): stop at the first increment below tail_tol.
    while (true) {
      // Running out of representable radii before the increments fall off
      // means the series only "converged" through underflow.
      if (terms >= kMaxSeriesTerms || (r > 0.0 && std::ldexp(r, -terms) == 0.0)) {
        std::ostringstream msg;
        msg << "jensen_to_upper_hh_tabor: Σ α_J(r/2^n) does not converge (increment "
            << alpha_j(std::ldexp(r, -terms)) << " after " << terms << " terms)";
        throw DivergenceError(msg.str());
      }
      const double increment = std::abs(alpha_j(std::ldexp(r, -terms))) * mass;
      if (increment < tail_tol) break;
      ++terms;
    }
    out.tail_bound = std::abs(alpha_j(std::ldexp(r, -terms))) * mass;
  }
  out.terms = terms;

  QuadratureSpec level_spec = spec;
  level_spec.abs_tol = spec.abs_tol / std::max(terms, 1);
  for (int n = 0; n < terms; ++n) {
    const double a = alpha_j(std::ldexp(r, -n));
    if (a == 0.0) continue;
    // ∫ d(2^n t) ρ(t) dt = ½ ∫ x B_n(x) dx
    const double d_n = 0.5 * dyadic_level_moment(rho, 1.0, n, level_spec).value;
    out.alpha_h += 2.0 * a * d_n;
  }
  return out;
}

double jensen_to_lower_hh(const RadialErrorFunction& alpha_j, double r, const QuadratureSpec& spec) {
  if (!(r >= 0.0)) throw DomainError("jensen_to_lower_hh: r must be >= 0");
  spec.validate();
  if (auto c = alpha_j.constant_value()) return *c;
  if (const auto& form = alpha_j.power_form()) {
    double acc = 0.0;
    for (const auto& a : form->atoms()) acc += a.coefficient * std::pow(r, a.exponent) / (a.exponent + 1.0);
    return acc;
  }
  return radial_moment(alpha_j, r, [](double) { return 1.0; }, spec).value;
}

PowerError jensen_to_hh_power(const PowerError& mu_j, const WeightFunction& rho, TakagiKind kind,
                              const QuadratureSpec& spec) {
  spec.validate();
  if (kind == TakagiKind::S && !mu_j.nonnegative()) {
    throw SignError("jensen_to_hh_power: the S transform needs nonnegative coefficients");
  }
  std::vector<PowerAtom> out;
  out.reserve(mu_j.atoms().size());
  for (const auto& a : mu_j.atoms()) {
    // Constant weights have the closed-form Takagi integrals; everything else
    // goes through the dyadic moments.
    const double factor =
        rho.is_constant()
            ? rho(0.5) * (kind == TakagiKind::T ? takagi_T_integral(a.exponent) : takagi_S_integral(a.exponent))
            : takagi_weighted_integral(kind, a.exponent, rho, spec).value;
    out.push_back({a.coefficient * factor, a.exponent});
  }
  return PowerError(std::move(out));
}

double hh_to_jensen_denominator(double q, const WeightFunction& rho, const QuadratureSpec& spec) {
  if (!(q > 0.0)) throw DomainError("hh_to_jensen_denominator: q must be > 0");
  if (rho.is_constant()) return rho(0.5) * q / (q + 1.0);
  const auto moment = reflected_moment(RadialErrorFunction::power(1.0, q), rho, 1.0, spec);
  return rho.declared_integral() - moment;
}

PowerError hh_to_jensen_power(const PowerError& mu_h, const WeightFunction& rho,
                              const QuadratureSpec& spec) {
  spec.validate();
  std::vector<PowerAtom> out;
  out.reserve(mu_h.atoms().size());
  for (const auto& a : mu_h.atoms()) {
    const double den = hh_to_jensen_denominator(a.exponent, rho, spec);
    if (!(den > 1e-14)) {
      std::ostringstream msg;
      msg << "hh_to_jensen_power: ∫(1-|1-2t|^q)ρ = " << den << " for q=" << a.exponent;
      throw DegenerateDenominatorError(msg.str());
    }
    out.push_back({a.coefficient / den, a.exponent});
  }
  return PowerError(std::move(out));
}

FixedPointReport check_alpha_fixed_point(const RadialErrorFunction& alpha_j,
                                         const RadialErrorFunction& alpha_h,
                                         const WeightFunction& rho, std::span<const double> radii,
                                         const QuadratureSpec& spec) {
  spec.validate();
  FixedPointReport out;
  out.origin_ok = alpha_j(0.0) >= alpha_h(0.0);
  out.max_residual = -HUGE_VAL;
  for (double u : radii) {
    const double residual = reflected_moment(alpha_j, rho, u, spec) + alpha_h(u) - alpha_j(u);
    if (residual > out.max_residual) {
      out.max_residual = residual;
      out.witness_radius = u;
    }
  }
  if (radii.empty()) out.max_residual = 0.0;
  return out;
}

IterationReport hh_to_jensen_iterate(const RadialErrorFunction& alpha_h, const WeightFunction& rho,
                                     double r, int n_max, const QuadratureSpec& spec,
                                     const std::optional<RadialErrorFunction>& fixed_point,
                                     double tol) {
  if (n_max < 1) throw DomainError("hh_to_jensen_iterate: n_max must be >= 1");
  spec.validate();
  IterationReport out;
  const double base = alpha_h(r);
  out.values.push_back(base);
  if (n_max > 1) {
    const PhiFunction phi = symmetrize_phi(rho);
    const auto iterates = iterate_phi_sequence(phi, n_max - 1, spec);
    QuadratureSpec outer = spec.without_singularity();
    outer.max_panels = std::max(outer.max_panels, 4000);
    double acc = base;
    for (const auto& phi_k : iterates) {
      auto F = [&](double x) { return alpha_h(std::exp(-x) * r) * phi_k.at_log(x); };
      acc += integrate_exp_weighted(F, phi_k.class_index(), outer).value;
      out.values.push_back(acc);
    }
  }
  for (std::size_t i = 1; i < out.values.size(); ++i) {
    if (out.values[i] < out.values[i - 1] - tol) out.nondecreasing = false;
  }
  if (fixed_point) {
    const double ceiling = (*fixed_point)(r) - (*fixed_point)(0.0) + alpha_h(0.0) + tol;
    out.below_fixed_point = std::all_of(out.values.begin(), out.values.end(),
                                        [&](double v) { return v <= ceiling; });
  }
  return out;
}

const char* to_string(ConstantOrdering ordering) {
  switch (ordering) {
    case ConstantOrdering::T_smaller: return "T_smaller";
    case ConstantOrdering::S_smaller: return "S_smaller";
    case ConstantOrdering::equal: return "equal";
  }
  return "equal";
}

ConstantComparison compare_constants(double q) {
  ConstantComparison out;
  out.t_constant = takagi_T_integral(q);
  out.s_constant = takagi_S_integral(q);
  const double gap = out.t_constant - out.s_constant;
  if (std::abs(gap) <= 1e-12 * std::max(out.t_constant, out.s_constant)) {
    out.ordering = ConstantOrdering::equal;
  } else {
    out.ordering = gap < 0.0 ? ConstantOrdering::T_smaller : ConstantOrdering::S_smaller;
  }
  return out;
}

}  // namespace hhkit
