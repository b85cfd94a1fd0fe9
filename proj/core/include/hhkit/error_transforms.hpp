#pragma once

#include <optional>
#include <span>
#include <vector>

#include "hhkit/error_function.hpp"
#include "hhkit/quadrature.hpp"
#include "hhkit/takagi.hpp"
#include "hhkit/weight.hpp"

namespace hhkit {

struct UpperHHTransform {
  double lambda = 0.0;  // ∫ t ρ(t) dt
  double alpha_h = 0.0;
  int terms = 0;
  double tail_bound = 0.0;
  /// False when the truncation rests on a grid estimate of sup|α_J| or on a
  /// Cauchy test rather than a proven bound.
  bool certified = true;
};

/// α_H(r) = Σ_n 2^{-n} ∫_0^1 α_J(2 d(2^n t) r) ρ(t) dt.
UpperHHTransform jensen_to_upper_hh_series(const RadialErrorFunction& alpha_j,
                                           const WeightFunction& rho, double r,
                                           double tail_tol = 1e-10,
                                           const QuadratureSpec& spec = {});

/// α_H(r) = Σ_n 2 α_J(r / 2^n) ∫_0^1 d(2^n t) ρ(t) dt, for radially
/// increasing α_J with Σ α_J(r / 2^n) < ∞. Throws DivergenceError when the
/// partial sums of that series do not settle within the term budget.
UpperHHTransform jensen_to_upper_hh_tabor(const RadialErrorFunction& alpha_j,
                                          const WeightFunction& rho, double r,
                                          double tail_tol = 1e-10,
                                          const QuadratureSpec& spec = {});

/// α_H(r) = ∫_0^1 α_J(|1 - 2t| r) dt.
double jensen_to_lower_hh(const RadialErrorFunction& alpha_j, double r,
                          const QuadratureSpec& spec = {});

/// Atoms (c_i ∫ T_{q_i} ρ, q_i) or (c_i ∫ S_{q_i} ρ, q_i).
/// The S version needs c_i >= 0 (SignError otherwise).
PowerError jensen_to_hh_power(const PowerError& mu_j, const WeightFunction& rho,
                              TakagiKind kind, const QuadratureSpec& spec = {});

/// ∫_0^1 (1 - |1 - 2t|^q) ρ(t) dt.
double hh_to_jensen_denominator(double q, const WeightFunction& rho,
                                const QuadratureSpec& spec = {});

/// Atoms (c_i / ∫(1 - |1 - 2t|^{q_i}) ρ, q_i). Throws
/// DegenerateDenominatorError when a denominator is not positive.
PowerError hh_to_jensen_power(const PowerError& mu_h, const WeightFunction& rho,
                              const QuadratureSpec& spec = {});

struct FixedPointReport {
  /// max over radii of ∫α_J(|1-2t|u)ρ dt + α_H(u) - α_J(u); <= 0 means the
  /// inequality holds.
  double max_residual = 0.0;
  double witness_radius = 0.0;
  bool origin_ok = true;  // α_J(0) >= α_H(0)
  bool holds(double tol) const { return origin_ok && max_residual <= tol; }
};

FixedPointReport check_alpha_fixed_point(const RadialErrorFunction& alpha_j,
                                         const RadialErrorFunction& alpha_h,
                                         const WeightFunction& rho,
                                         std::span<const double> radii,
                                         const QuadratureSpec& spec = {});

struct IterationReport {
  std::vector<double> values;  // α_1(r), ..., α_{n_max}(r)
  bool nondecreasing = true;
  /// Set when a fixed point α_J was supplied: every α_n(r) stayed below
  /// α_J(r) - α_J(0) + α_H(0) + tol.
  std::optional<bool> below_fixed_point;
};

/// α_1 = α_H, α_{n+1}(u) = ∫_0^1 α_n(tu) φ(t) dt + α_H(u) with
/// φ the symmetrised weight, evaluated at radius r through the unrolled form
/// α_n(r) = α_H(r) + Σ_{k<n} ∫_0^1 α_H(sr) φ_k(s) ds.
IterationReport hh_to_jensen_iterate(const RadialErrorFunction& alpha_h, const WeightFunction& rho,
                                     double r, int n_max, const QuadratureSpec& spec = {},
                                     const std::optional<RadialErrorFunction>& fixed_point = {},
                                     double tol = 1e-8);

enum class ConstantOrdering { T_smaller, S_smaller, equal };

const char* to_string(ConstantOrdering ordering);

struct ConstantComparison {
  ConstantOrdering ordering = ConstantOrdering::equal;
  double t_constant = 0.0;  // 2/(q+1)
  double s_constant = 0.0;  // 2^q/(2^{q+1}-2)
};

/// Orders 2/(q+1) against 2^q/(2^{q+1}-2); "equal" within 1e-12 relative.
ConstantComparison compare_constants(double q);

}  // namespace hhkit
