#include "hhkit/phi_function.hpp"

#include <cmath>

#include "hhkit/special.hpp"

namespace hhkit {

struct PhiFunction::Impl {
  ScalarFunction direct;  // t ↦ φ(t); may be empty
  ScalarFunction log;     // x ↦ φ(e^{-x}); always set
  double class_index = 1.0;
  double norm_bound = 0.0;
  double integral = 0.0;
  std::optional<LogPowerForm> closed_form;
};

namespace {

void check_index(double p) {
  if (!(p > 0.0)) throw DomainError("PhiFunction: class index must be > 0");
}

double integral_in_log_variable(const ScalarFunction& log_fn, double p) {
  QuadratureSpec spec;
  spec.max_panels = 20000;
  return integrate_exp_weighted(log_fn, p, spec).value;
}

}  // namespace

PhiFunction PhiFunction::from_function(ScalarFunction phi, double class_index,
                                       double norm_bound, std::optional<double> integral) {
  check_index(class_index);
  if (!phi) throw DomainError("PhiFunction: empty evaluator");
  auto impl = std::make_shared<Impl>();
  impl->direct = phi;
  impl->log = [phi](double x) { return phi(std::exp(-x)); };
  impl->class_index = class_index;
  impl->norm_bound = norm_bound;
  impl->integral = integral ? *integral : integral_in_log_variable(impl->log, class_index);
  return PhiFunction(std::move(impl));
}

PhiFunction PhiFunction::from_log_function(ScalarFunction phi_of_log, double class_index,
                                           double norm_bound, std::optional<double> integral) {
  check_index(class_index);
  if (!phi_of_log) throw DomainError("PhiFunction: empty evaluator");
  auto impl = std::make_shared<Impl>();
  impl->log = std::move(phi_of_log);
  impl->class_index = class_index;
  impl->norm_bound = norm_bound;
  impl->integral = integral ? *integral : integral_in_log_variable(impl->log, class_index);
  return PhiFunction(std::move(impl));
}

PhiFunction PhiFunction::log_power(double coefficient, double exponent) {
  check_index(exponent);
  auto impl = std::make_shared<Impl>();
  const double power = exponent - 1.0;
  impl->log = [coefficient, power](double x) {
    return power == 0.0 ? coefficient : coefficient * std::pow(x, power);
  };
  impl->class_index = exponent;
  impl->norm_bound = std::abs(coefficient);
  impl->integral = coefficient * std::exp(log_gamma(exponent));
  impl->closed_form = LogPowerForm{coefficient, exponent};
  return PhiFunction(std::move(impl));
}

double PhiFunction::operator()(double t) const {
  if (impl_->direct) return impl_->direct(t);
  return impl_->log(-std::log(t));
}

double PhiFunction::at_log(double x) const { return impl_->log(x); }

double PhiFunction::class_index() const { return impl_->class_index; }
double PhiFunction::norm_bound() const { return impl_->norm_bound; }
double PhiFunction::integral() const { return impl_->integral; }
const std::optional<LogPowerForm>& PhiFunction::closed_form() const {
  return impl_->closed_form;
}

PhiFunction PhiFunction::scaled(double factor) const {
  auto impl = std::make_shared<Impl>(*impl_);
  if (impl_->direct) {
    auto inner = impl_->direct;
    impl->direct = [inner, factor](double t) { return factor * inner(t); };
  }
  auto inner_log = impl_->log;
  impl->log = [inner_log, factor](double x) { return factor * inner_log(x); };
  impl->norm_bound = std::abs(factor) * impl_->norm_bound;
  impl->integral = factor * impl_->integral;
  if (impl->closed_form) impl->closed_form->coefficient *= factor;
  return PhiFunction(std::move(impl));
}

}  // namespace hhkit
