#pragma once

#include <functional>
#include <span>
#include <string>

#include "hhkit/errors.hpp"

namespace hhkit {

using ScalarFunction = std::function<double(double)>;

/// Endpoint behaviour of an integrand on [a, b], in the normalised variable
/// t' = (t - a) / (b - a):
///   log_left   ~ (-ln t')^{p-1}          (substitution t' = e^{-s})
///   log_right  ~ (-ln(1 - t'))^{p-1}     (substitution 1 - t' = e^{-s})
///   log_both   ~ (-ln|1 - 2t'|)^{p-1}    (split at the midpoint, |1 - 2t'| = e^{-s})
enum class Singularity { none, log_left, log_right, log_both };

struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-12;
  int max_panels = 2000;
  Singularity singularity = Singularity::none;
  double exponent = 1.0;  // p of the declared singularity

  /// Throws DomainError when the invariants (abs_tol > 0, rel_tol >= 0,
  /// max_panels >= 4, exponent > 0) are violated.
  void validate() const;

  QuadratureSpec with_singularity(Singularity kind, double p) const;
  QuadratureSpec without_singularity() const;
  /// Same budget, tolerances divided by `factor` (used for nested integrals).
  QuadratureSpec tightened(double factor) const;
};

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int panels_used = 0;

  IntegralResult& operator+=(const IntegralResult& other) {
    value += other.value;
    error_estimate += other.error_estimate;
    panels_used += other.panels_used;
    return *this;
  }
};

/// Raised when the panel budget runs out before the tolerance is met.
/// Carries the best estimate obtained so far.
class BudgetExhaustedError : public Error {
 public:
  BudgetExhaustedError(const std::string& what, IntegralResult partial)
      : Error(what), partial_(partial) {}
  const IntegralResult& partial() const noexcept { return partial_; }

 private:
  IntegralResult partial_;
};

/// Global adaptive Gauss–Kronrod (7/15) integration of f over [a, b].
/// Honors spec.singularity by integrating in the logarithmic variable.
/// Throws DomainError if a >= b, BudgetExhaustedError on budget exhaustion.
IntegralResult integrate(const ScalarFunction& f, double a, double b,
                         const QuadratureSpec& spec = {});

/// As integrate(), with an initial subdivision at the given interior points
/// (kinks, jumps). Points outside (a, b) are ignored.
IntegralResult integrate(const ScalarFunction& f, double a, double b,
                         std::span<const double> breakpoints,
                         const QuadratureSpec& spec);

/// ∫_0^1 g(t) (-ln t)^{p-1} dt, computed as ∫_0^∞ g(e^{-s}) s^{p-1} e^{-s} ds.
IntegralResult integrate_log_substituted(const ScalarFunction& g, double p,
                                         const QuadratureSpec& spec = {});

/// ∫_0^∞ F(s) e^{-s} ds for F(s) = O(s^{p-1}) as s -> 0 and at most polynomial
/// growth at infinity. For p < 1 the variable u = s^p removes the singularity.
IntegralResult integrate_exp_weighted(const ScalarFunction& F, double p,
                                      const QuadratureSpec& spec = {});

/// ∫_a^b f for f = O((t-a)^{left-1}) near a and O((b-t)^{right-1}) near b.
/// Exponents below 1 are removed by a power substitution on that half.
IntegralResult integrate_endpoint_singular(const ScalarFunction& f, double a, double b,
                                           double left_exponent, double right_exponent,
                                           const QuadratureSpec& spec = {});

}  // namespace hhkit
