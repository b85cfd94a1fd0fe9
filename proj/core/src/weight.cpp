#include "hhkit/weight.hpp"

#include <algorithm>
#include <cmath>

namespace hhkit {

namespace {

double horner(const std::vector<double>& c, double t) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
  return acc;
}

double interpolate(const WeightFunction::PiecewiseLinear& pl, double t) {
  const auto& k = pl.knots;
  if (t <= k.front()) return pl.values.front();
  if (t >= k.back()) return pl.values.back();
  const auto hi = static_cast<std::size_t>(std::upper_bound(k.begin(), k.end(), t) - k.begin());
  const std::size_t lo = hi - 1;
  const double w = (t - k[lo]) / (k[hi] - k[lo]);
  return (1.0 - w) * pl.values[lo] + w * pl.values[hi];
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

WeightFunction::WeightFunction(Representation rep, double integral)
    : rep_(std::make_shared<const Representation>(std::move(rep))), integral_(integral) {
  const double left = (*this)(0.0);
  const double right = (*this)(1.0);
  endpoint_jump_ = std::isfinite(left) && std::isfinite(right) ? right - left : 0.0;
}

WeightFunction WeightFunction::constant(double value) {
  return WeightFunction(Constant{value}, value);
}

WeightFunction WeightFunction::polynomial(std::vector<double> coefficients) {
  if (coefficients.empty()) throw DomainError("polynomial weight needs coefficients");
  double integral = 0.0;
  for (std::size_t k = 0; k < coefficients.size(); ++k) {
    integral += coefficients[k] / static_cast<double>(k + 1);
  }
  return WeightFunction(Polynomial{std::move(coefficients)}, integral);
}

WeightFunction WeightFunction::piecewise_linear(std::vector<double> knots,
                                                std::vector<double> values) {
  if (knots.size() < 2 || knots.size() != values.size()) {
    throw DomainError("piecewise-linear weight needs >= 2 knots and matching values");
  }
  if (knots.front() != 0.0 || knots.back() != 1.0) {
    throw DomainError("piecewise-linear weight knots must span [0, 1]");
  }
  for (std::size_t i = 1; i < knots.size(); ++i) {
    if (!(knots[i] > knots[i - 1])) throw DomainError("knots must be strictly increasing");
  }
  double integral = 0.0;
  for (std::size_t i = 1; i < knots.size(); ++i) {
    integral += 0.5 * (values[i] + values[i - 1]) * (knots[i] - knots[i - 1]);
  }
  return WeightFunction(PiecewiseLinear{std::move(knots), std::move(values)}, integral);
}

WeightFunction WeightFunction::callable(ScalarFunction fn, bool continuous,
                                        std::vector<double> breakpoints) {
  if (!fn) throw DomainError("callable weight needs an evaluator");
  QuadratureSpec spec;
  spec.max_panels = 20000;
  const IntegralResult r = integrate(fn, 0.0, 1.0, breakpoints, spec);
  return WeightFunction(Callable{std::move(fn), continuous, std::move(breakpoints)}, r.value);
}

double WeightFunction::operator()(double t) const {
  return std::visit(Overloaded{
                        [](const Constant& c) { return c.value; },
                        [t](const Polynomial& p) { return horner(p.coefficients, t); },
                        [t](const PiecewiseLinear& pl) { return interpolate(pl, t); },
                        [t](const Callable& c) { return c.fn(t); },
                    },
                    *rep_);
}

bool WeightFunction::is_continuous() const {
  if (const auto* c = std::get_if<Callable>(rep_.get())) return c->continuous;
  return true;
}

std::vector<double> WeightFunction::breakpoints() const {
  if (const auto* pl = std::get_if<PiecewiseLinear>(rep_.get())) {
    return {pl->knots.begin() + 1, pl->knots.end() - 1};
  }
  if (const auto* c = std::get_if<Callable>(rep_.get())) return c->breakpoints;
  return {};
}

WeightFunction WeightFunction::scaled(double factor) const {
  return std::visit(
      Overloaded{
          [&](const Constant& c) { return constant(c.value * factor); },
          [&](const Polynomial& p) {
            std::vector<double> c = p.coefficients;
            for (double& x : c) x *= factor;
            return polynomial(std::move(c));
          },
          [&](const PiecewiseLinear& pl) {
            std::vector<double> v = pl.values;
            for (double& x : v) x *= factor;
            return piecewise_linear(pl.knots, std::move(v));
          },
          [&](const Callable& c) {
            ScalarFunction inner = c.fn;
            return WeightFunction(
                Callable{[inner, factor](double t) { return factor * inner(t); }, c.continuous,
                         c.breakpoints},
                integral_ * factor);
          },
      },
      *rep_);
}

double WeightFunction::exact_dyadic_sum(double t, int level) const {
  const std::size_t count = std::size_t{1} << level;
  const double h = std::ldexp(1.0, -level);
  auto sum_with = [&](auto&& eval) {
    double acc = 0.0;
    for (std::size_t k = 0; k < count; ++k) acc += eval((t + static_cast<double>(k)) * h);
    return acc * h;
  };
  return std::visit(
      Overloaded{
          [](const Constant& c) { return c.value; },
          [&](const Polynomial& p) {
            return sum_with([&](double s) { return horner(p.coefficients, s); });
          },
          [&](const PiecewiseLinear& pl) {
            return sum_with([&](double s) { return interpolate(pl, s); });
          },
          [&](const Callable& c) { return sum_with([&](double s) { return c.fn(s); }); },
      },
      *rep_);
}

double WeightFunction::dyadic_average(double t, int level) const {
  if (level < 0) throw DomainError("dyadic_average: level must be >= 0");
  if (is_constant() || level <= kExactLevels) return exact_dyadic_sum(t, level);
  // Offset Riemann sum: ∫ρ + h (t - 1/2)(ρ(1) - ρ(0)) + O(h^2).
  const double h = std::ldexp(1.0, -level);
  return integral_ + h * (t - 0.5) * endpoint_jump_;
}

double WeightFunction::tent_average(double x, int level) const {
  return 0.5 * (dyadic_average(0.5 * x, level) + dyadic_average(1.0 - 0.5 * x, level));
}

}  // namespace hhkit
