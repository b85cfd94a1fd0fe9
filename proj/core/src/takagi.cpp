#include "hhkit/takagi.hpp"

#include <algorithm>
#include <cmath>

namespace hhkit {

void TakagiParams::validate() const {
  if (!(q > 0.0) || !std::isfinite(q)) throw DomainError("TakagiParams: q must be > 0");
  if (!(tail_tol > 0.0)) throw DomainError("TakagiParams: tail_tol must be > 0");
}

double TakagiParams::tail_bound(TakagiKind kind) const {
  const int n = truncation_index(kind);
  if (kind == TakagiKind::T) return std::ldexp(2.0, -n);
  return std::exp2(-n * q) / (1.0 - std::exp2(-q));
}

int TakagiParams::truncation_index(TakagiKind kind) const {
  validate();
  if (kind == TakagiKind::T) {
    // 2^{1-N} < tol
    return std::max(1, static_cast<int>(std::floor(1.0 - std::log2(tail_tol))) + 1);
  }
  // 2^{-Nq} / (1 - 2^{-q}) < tol
  const double need = -std::log2(tail_tol * (1.0 - std::exp2(-q))) / q;
  return std::max(1, static_cast<int>(std::floor(need)) + 1);
}

double dist_to_integers(double s) {
  const double f = s - std::floor(s);
  return std::min(f, 1.0 - f);
}

namespace {

// Doubling a number in [0, 1) and dropping the integer part is exact in
// binary floating point, so dyadic inputs terminate the loop on their own.
template <typename Term>
double dyadic_series(double t, int terms, Term term) {
  double s = t - std::floor(t);
  double acc = 0.0;
  for (int n = 0; n < terms && s != 0.0; ++n) {
    acc += term(n, std::min(s, 1.0 - s));
    s *= 2.0;
    if (s >= 1.0) s -= 1.0;
  }
  return acc;
}

// Σ_n 2 α_J(r / 2^n) d(2^n t) for radially increasing α_J; the series is
// cut once α_J(r / 2^n) drops below tail_tol.
double tabor_envelope(const RadialErrorFunction& alpha_j, double t, double r, double tail_tol) {
  if (!alpha_j.flags().radially_increasing) {
    throw DomainError("pointwise_envelope: the S envelope needs a radially increasing error term");
  }
  constexpr int kMaxTerms = 1100;
  double s = t - std::floor(t);
  double acc = 0.0;
  for (int n = 0; n < kMaxTerms; ++n) {
    const double radius = std::ldexp(r, -n);
    if (r > 0.0 && radius == 0.0) break;
    const double a = alpha_j(radius);
    if (std::abs(a) < tail_tol) return acc;
    acc += 2.0 * a * std::min(s, 1.0 - s);
    s *= 2.0;
    if (s >= 1.0) s -= 1.0;
  }
  throw DivergenceError("pointwise_envelope: Σ α_J(r/2^n) does not converge");
}

}  // namespace

double takagi_T(const TakagiParams& params, double t) {
  const int terms = params.truncation_index(TakagiKind::T);
  const double q = params.q;
  return dyadic_series(t, terms, [q](int n, double d) { return std::ldexp(std::pow(2.0 * d, q), -n); });
}

double takagi_S(const TakagiParams& params, double t) {
  const int terms = params.truncation_index(TakagiKind::S);
  const double q = params.q;
  return dyadic_series(t, terms, [q](int n, double d) { return 2.0 * d * std::exp2(-n * q); });
}

double takagi(TakagiKind kind, const TakagiParams& params, double t) {
  return kind == TakagiKind::T ? takagi_T(params, t) : takagi_S(params, t);
}

double takagi_T_integral(double q) {
  if (!(q > 0.0)) throw DomainError("takagi_T_integral: q must be > 0");
  return 2.0 / (q + 1.0);
}

double takagi_S_integral(double q) {
  if (!(q > 0.0)) throw DomainError("takagi_S_integral: q must be > 0");
  return std::exp2(q) / (std::exp2(q + 1.0) - 2.0);
}

IntegralResult dyadic_level_moment(const WeightFunction& rho, double q, int level,
                                   const QuadratureSpec& spec) {
  if (!(q > 0.0)) throw DomainError("dyadic_level_moment: q must be > 0");
  QuadratureSpec inner = spec.without_singularity();
  inner.max_panels = std::max(inner.max_panels, 20000);
  if (rho.is_constant()) {
    IntegralResult r;
    r.value = rho(0.5) / (q + 1.0);
    return r;
  }
  auto f = [&](double x) { return std::pow(x, q) * rho.tent_average(x, level); };
  if (level > WeightFunction::kExactLevels) {
    // The first-order corrections of the two dyadic averages cancel in the
    // tent average, leaving B_n = ∫ρ up to O(4^{-n}).
    IntegralResult r;
    r.value = rho.declared_integral() / (q + 1.0);
    return r;
  }
  return integrate_endpoint_singular(f, 0.0, 1.0, q + 1.0, 1.0, inner);
}

IntegralResult takagi_weighted_integral(TakagiKind kind, double q, const WeightFunction& rho,
                                        const QuadratureSpec& spec) {
  spec.validate();
  const TakagiParams params{q, 0.5 * spec.abs_tol};
  const int terms = params.truncation_index(kind);
  QuadratureSpec level_spec = spec;
  level_spec.abs_tol = 0.5 * spec.abs_tol / terms;
  IntegralResult total;
  for (int n = 0; n < terms; ++n) {
    // S uses the first power of 2d with weight 2^{-nq}; T uses the q-th with 2^{-n}.
    const IntegralResult level =
        dyadic_level_moment(rho, kind == TakagiKind::T ? q : 1.0, n, level_spec);
    const double weight = kind == TakagiKind::T ? std::ldexp(1.0, -n) : std::exp2(-n * q);
    total.value += weight * level.value;
    total.error_estimate += weight * level.error_estimate;
    total.panels_used += level.panels_used;
  }
  total.error_estimate += params.tail_bound(kind) * std::max(1.0, rho.declared_integral());
  return total;
}

double pointwise_envelope(EnvelopeKind kind, const RadialErrorFunction& alpha_j, double t,
                          double r, double tail_tol) {
  if (!(tail_tol > 0.0)) throw DomainError("pointwise_envelope: tail_tol must be > 0");
  if (!(r >= 0.0)) throw DomainError("pointwise_envelope: r must be >= 0");
  if (kind != EnvelopeKind::general) {
    const auto& form = alpha_j.power_form();
    if (!form && kind == EnvelopeKind::S_env) return tabor_envelope(alpha_j, t, r, tail_tol);
    if (!form) throw DomainError("pointwise_envelope: the T envelope needs a power error term");
    const TakagiKind tk = kind == EnvelopeKind::T_env ? TakagiKind::T : TakagiKind::S;
    double acc = 0.0;
    for (const auto& atom : form->atoms()) {
      if (atom.coefficient == 0.0) continue;
      const double scale = std::abs(atom.coefficient) * std::pow(r, atom.exponent);
      const double tol = scale > 0.0 ? tail_tol / (scale * form->atoms().size()) : tail_tol;
      acc += atom.coefficient * takagi(tk, TakagiParams{atom.exponent, tol}, t) *
             std::pow(r, atom.exponent);
    }
    return acc;
  }
  const SupEstimate sup = alpha_j.sup_on(r);
  int terms = 1;
  while (sup.value * std::ldexp(2.0, -terms) >= tail_tol && terms < 1100) ++terms;
  double s = t - std::floor(t);
  double acc = 0.0;
  for (int n = 0; n < terms; ++n) {
    acc += std::ldexp(alpha_j(2.0 * std::min(s, 1.0 - s) * r), -n);
    s *= 2.0;
    if (s >= 1.0) s -= 1.0;
  }
  return acc;
}

}  // namespace hhkit
