#pragma once

#include "hhkit/error_function.hpp"
#include "hhkit/quadrature.hpp"
#include "hhkit/weight.hpp"

namespace hhkit {

enum class TakagiKind { T, S };

/// T_q(t) = Σ_n (2 d(2^n t))^q / 2^n and S_q(t) = Σ_n d(2^n t) / 2^{nq-1},
/// truncated after the first N terms where N comes from the analytic tail
/// bounds 2^{1-N} (T) and 2^{-Nq} / (1 - 2^{-q}) (S).
struct TakagiParams {
  double q = 1.0;
  double tail_tol = 1e-10;

  void validate() const;
  int truncation_index(TakagiKind kind) const;
  double tail_bound(TakagiKind kind) const;
};

/// Distance from s to the nearest integer.
double dist_to_integers(double s);

double takagi_T(const TakagiParams& params, double t);
double takagi_S(const TakagiParams& params, double t);
double takagi(TakagiKind kind, const TakagiParams& params, double t);

/// 2/(q+1) and 2^q/(2^{q+1}-2): the integrals of T_q and S_q over [0, 1].
double takagi_T_integral(double q);
double takagi_S_integral(double q);

/// ∫_0^1 x^q B_n(x) dx with B_n the tent average of ρ at level n; equals
/// ∫_0^1 (2 d(2^n t))^q ρ(t) dt.
IntegralResult dyadic_level_moment(const WeightFunction& rho, double q, int level,
                                   const QuadratureSpec& spec = {});

/// ∫_0^1 T_q ρ or ∫_0^1 S_q ρ. The series is truncated at spec.abs_tol and
/// each level integral is computed from the tent averages of ρ.
IntegralResult takagi_weighted_integral(TakagiKind kind, double q, const WeightFunction& rho,
                                        const QuadratureSpec& spec = {});

enum class EnvelopeKind { T_env, S_env, general };

/// Convexity-defect envelope at t for a segment of radius r:
///   T_env:   Σ c_i T_{q_i}(t) r^{q_i}
///   S_env:   Σ c_i S_{q_i}(t) r^{q_i}, or for a non-power radially
///            increasing α_J the series Σ_n 2 α_J(r / 2^n) d(2^n t)
///            (DivergenceError when Σ α_J(r / 2^n) does not settle)
///   general: Σ_n α_J(2 d(2^n t) r) / 2^n, truncated by sup|α_J| 2^{1-N} < tail_tol.
/// T_env needs a power-form α_J (DomainError otherwise).
double pointwise_envelope(EnvelopeKind kind, const RadialErrorFunction& alpha_j, double t,
                          double r, double tail_tol = 1e-10);

}  // namespace hhkit
