#pragma once

#include <memory>
#include <variant>
#include <vector>

#include "hhkit/quadrature.hpp"

namespace hhkit {

/// Nonnegative averaging weight ρ on [0, 1]. Immutable and cheap to copy;
/// copies share the underlying representation.
class WeightFunction {
 public:
  struct Constant {
    double value = 1.0;
  };
  /// Coefficients in ascending powers of t.
  struct Polynomial {
    std::vector<double> coefficients;
  };
  /// Linear interpolation between knots; knots must start at 0 and end at 1.
  struct PiecewiseLinear {
    std::vector<double> knots;
    std::vector<double> values;
  };
  /// Opaque evaluator. `breakpoints` lists interior points where ρ is not
  /// smooth; `continuous` is false when ρ has jumps.
  struct Callable {
    ScalarFunction fn;
    bool continuous = true;
    std::vector<double> breakpoints;
  };
  using Representation = std::variant<Constant, Polynomial, PiecewiseLinear, Callable>;

  /// Levels n <= kExactLevels of the dyadic averages are summed term by term;
  /// deeper levels use the Euler–Maclaurin expansion of the Riemann sum.
  static constexpr int kExactLevels = 12;

  static WeightFunction constant(double value = 1.0);
  static WeightFunction polynomial(std::vector<double> coefficients);
  static WeightFunction piecewise_linear(std::vector<double> knots, std::vector<double> values);
  static WeightFunction callable(ScalarFunction fn, bool continuous = true,
                                 std::vector<double> breakpoints = {});

  double operator()(double t) const;

  const Representation& representation() const { return *rep_; }
  bool is_constant() const { return std::holds_alternative<Constant>(*rep_); }
  bool is_continuous() const;

  /// ∫_0^1 ρ: exact for closed-form representations, trapezoid on the native
  /// grid for piecewise-linear, adaptive quadrature for callables.
  double declared_integral() const { return integral_; }
  /// Interior points where ρ may fail to be smooth.
  std::vector<double> breakpoints() const;

  WeightFunction scaled(double factor) const;

  /// 2^{-n} Σ_{k=0}^{2^n-1} ρ((t + k) / 2^n), the level-n dyadic average of ρ.
  double dyadic_average(double t, int level) const;

  /// ½[A_n(x/2) + A_n(1 - x/2)] with A_n = dyadic_average: the density of the
  /// pushforward of ρ(t)dt under t ↦ 2 d_Z(2^n t), as a function of x ∈ [0, 1].
  double tent_average(double x, int level) const;

 private:
  explicit WeightFunction(Representation rep, double integral);
  double exact_dyadic_sum(double t, int level) const;

  std::shared_ptr<const Representation> rep_;
  double integral_ = 1.0;
  double endpoint_jump_ = 0.0;  // ρ(1) - ρ(0) when both are finite
};

}  // namespace hhkit
