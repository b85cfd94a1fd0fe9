#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "hhkit/quadrature.hpp"

namespace hhkit {

struct PowerAtom {
  double coefficient = 0.0;
  double exponent = 1.0;
};

/// Σ c_i ‖u‖^{q_i}: a finite atomic measure on the exponents.
class PowerError {
 public:
  PowerError() = default;
  /// Throws DomainError for a non-positive or non-finite exponent or a
  /// non-finite coefficient.
  explicit PowerError(std::vector<PowerAtom> atoms);

  const std::vector<PowerAtom>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }
  bool nonnegative() const;

  double operator()(double r) const;
  PowerError scaled(double factor) const;

 private:
  std::vector<PowerAtom> atoms_;
};

struct SupEstimate {
  double value = 0.0;
  /// False when the value is a grid maximum rather than a proven bound.
  bool certified = false;
};

struct RadialFlags {
  bool radially_increasing = false;
  bool radially_bounded = true;
};

/// Even error term α on the difference set, stored through its radial
/// profile g(r) = α(r u0) with ‖u0‖ = 1.
class RadialErrorFunction {
 public:
  using Flags = RadialFlags;

  static RadialErrorFunction zero();
  static RadialErrorFunction constant(double epsilon);
  static RadialErrorFunction power(PowerError atoms);
  static RadialErrorFunction power(double coefficient, double exponent);
  /// `sup_bound`, when given, is a caller-certified bound on |g| over every
  /// [0, r]. Throws DomainError if g(0) is not finite.
  static RadialErrorFunction profile(ScalarFunction g, Flags flags,
                                     std::optional<double> sup_bound = std::nullopt);
  /// Piecewise-linear profile through (r_i, v_i), constant outside the samples.
  static RadialErrorFunction from_samples(std::vector<std::pair<double, double>> samples,
                                          Flags flags = {});

  double operator()(double r) const;

  const Flags& flags() const;
  const std::optional<PowerError>& power_form() const;
  /// Set when the function is a constant ε (ε ≥ 0 or not).
  std::optional<double> constant_value() const;
  const std::vector<std::pair<double, double>>& samples() const;

  /// sup |g| over [0, r]. Exact for power and constant forms, for declared
  /// bounds and for radially increasing profiles; a grid estimate otherwise.
  /// Throws UnboundedProfileError when the profile is declared unbounded or
  /// the estimate is not finite.
  SupEstimate sup_on(double r) const;

  RadialErrorFunction scaled(double factor) const;

 private:
  struct Impl;
  explicit RadialErrorFunction(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

}  // namespace hhkit
