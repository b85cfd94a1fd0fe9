#pragma once

#include <memory>
#include <optional>

#include "hhkit/quadrature.hpp"

namespace hhkit {

/// c (-ln t)^{p-1}: the closed-form family the convolution calculus maps to itself.
struct LogPowerForm {
  double coefficient = 1.0;
  double exponent = 1.0;  // p; exponent 1 is the constant function
};

/// Element of the class Φ_p: a measurable function on (0, 1) with
/// |φ(t)| <= norm_bound · (-ln t)^{p-1}. Immutable; copies share state.
///
/// Every PhiFunction can be evaluated in the logarithmic variable
/// x = -ln t, which is how the convolution calculus works internally.
class PhiFunction {
 public:
  /// Generic function given on (0, 1). When `integral` is omitted it is
  /// computed by quadrature in the logarithmic variable.
  static PhiFunction from_function(ScalarFunction phi, double class_index, double norm_bound,
                                   std::optional<double> integral = std::nullopt);
  /// Generic function given as x ↦ φ(e^{-x}) on (0, ∞).
  static PhiFunction from_log_function(ScalarFunction phi_of_log, double class_index,
                                       double norm_bound,
                                       std::optional<double> integral = std::nullopt);
  /// c (-ln t)^{p-1}; norm c, integral c Γ(p).
  static PhiFunction log_power(double coefficient, double exponent);
  static PhiFunction constant(double value) { return log_power(value, 1.0); }

  double operator()(double t) const;
  /// φ(e^{-x}) for x > 0.
  double at_log(double x) const;

  double class_index() const;
  double norm_bound() const;
  double integral() const;
  /// Set when the function is known in closed form as c (-ln t)^{p-1}.
  const std::optional<LogPowerForm>& closed_form() const;

  PhiFunction scaled(double factor) const;

 private:
  struct Impl;
  explicit PhiFunction(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

}  // namespace hhkit
