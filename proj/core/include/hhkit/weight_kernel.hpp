#pragma once

#include <optional>
#include <string>

#include "hhkit/phi_function.hpp"
#include "hhkit/quadrature.hpp"
#include "hhkit/weight.hpp"

namespace hhkit {

/// Checks ρ >= 0 on a 4097-point grid and ∫ρ = 1 within 1e-8.
/// With `rescale` a non-normalised ρ is divided by its integral; otherwise
/// it is rejected. Throws NegativeWeightError (with witness t) or
/// NonNormalizableError when ∫ρ <= 0.
WeightFunction validate_weight(const WeightFunction& rho, const QuadratureSpec& spec = {},
                               bool rescale = false);

/// λ = ∫_0^1 t ρ(t) dt.
double lambda_of(const WeightFunction& rho, const QuadratureSpec& spec = {});

/// Partial sum ψ_{N-1}(t) = ½ Σ_{n<N} 4^{-n} Σ_{k<2^n} ρ((t+k)/2^n) of the
/// dyadic series solving ρ(t) = 2ψ(t) - (ψ(t/2) + ψ((t+1)/2))/2.
/// Evaluated lazily, since the functional equation needs ψ off any grid.
class PsiKernel {
 public:
  static constexpr int kDefaultTerms = 30;

  PsiKernel(WeightFunction source, int n_terms);

  double operator()(double t) const;

  const WeightFunction& source() const { return source_; }
  int n_terms() const { return n_terms_; }
  /// ‖ψ - ψ_{N-1}‖_1 <= 2^{-N} for normalised ρ.
  double l1_tail_bound() const;

 private:
  WeightFunction source_;
  int n_terms_;
};

PsiKernel build_psi(const WeightFunction& rho, int n_terms = PsiKernel::kDefaultTerms);

struct PsiResidual {
  double max_residual = 0.0;
  double witness = 0.0;  // grid point attaining the maximum (pointwise mode)
  bool pass = false;
  /// Discontinuous ρ have no meaningful pointwise residual; the integrated
  /// residual ∫|ρ - 2ψ + (ψ(t/2)+ψ((t+1)/2))/2| is reported instead.
  bool l1_mode = false;
};

PsiResidual check_psi_equation(const PsiKernel& kernel, int grid_size, double tol);

struct PsiIntegrals {
  double total = 0.0;       // ∫_0^1 ψ      (= ∫ρ)
  double upper_half = 0.0;  // ∫_{1/2}^1 ψ  (= λ)
  double lower_half = 0.0;  // ∫_0^{1/2} ψ  (= 1 - λ)
  double error_estimate = 0.0;
};

PsiIntegrals psi_lambda_identities(const PsiKernel& kernel, const QuadratureSpec& spec = {});

/// Bound ρ(t) <= c (-ln|1-2t|)^{p-1}, the hypothesis that places the
/// symmetrised weight in Φ_p.
struct GrowthBound {
  double c = 1.0;
  double p = 1.0;
};

/// φ(s) = (ρ((1+s)/2) + ρ((1-s)/2)) / 2 on (0, 1), with ∫φ = ∫ρ.
/// The class index and norm come from `growth` when given; otherwise
/// p = 1 and the norm is the grid estimate of sup|φ|.
PhiFunction symmetrize_phi(const WeightFunction& rho,
                           std::optional<GrowthBound> growth = std::nullopt);

struct GrowthCheck {
  bool pass = true;
  std::optional<double> witness;  // first violating t
  int samples_checked = 0;
};

GrowthCheck check_growth_condition(const WeightFunction& rho, GrowthBound bound,
                                   int grid_size = 4096);

struct PhiNormEstimate {
  double estimate = 0.0;  // grid lower bound on sup |ln t|^{1-p} |φ(t)|
  double argmax = 0.0;
  bool bounded = true;    // false when the estimate exceeds 1e12 or keeps growing
};

/// Grid estimate of ⟦φ⟧_p over a uniform interior grid plus geometric
/// refinement toward both endpoints.
PhiNormEstimate phi_norm(const PhiFunction& phi, double p, int grid_size = 1024);
PhiNormEstimate phi_norm(const ScalarFunction& phi, double p, int grid_size = 1024);

}  // namespace hhkit
