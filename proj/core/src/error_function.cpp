#include "hhkit/error_function.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hhkit {

PowerError::PowerError(std::vector<PowerAtom> atoms) : atoms_(std::move(atoms)) {
  for (const auto& a : atoms_) {
    if (!(a.exponent > 0.0) || !std::isfinite(a.exponent)) {
      throw DomainError("PowerError: exponents must be finite and > 0");
    }
    if (!std::isfinite(a.coefficient)) throw DomainError("PowerError: coefficients must be finite");
  }
}

bool PowerError::nonnegative() const {
  return std::all_of(atoms_.begin(), atoms_.end(),
                     [](const PowerAtom& a) { return a.coefficient >= 0.0; });
}

double PowerError::operator()(double r) const {
  const double x = std::abs(r);
  double acc = 0.0;
  for (const auto& a : atoms_) acc += a.coefficient * std::pow(x, a.exponent);
  return acc;
}

PowerError PowerError::scaled(double factor) const {
  std::vector<PowerAtom> out = atoms_;
  for (auto& a : out) a.coefficient *= factor;
  return PowerError(std::move(out));
}

struct RadialErrorFunction::Impl {
  ScalarFunction profile;
  Flags flags;
  std::optional<PowerError> power;
  std::optional<double> constant;
  std::optional<double> sup_bound;
  std::vector<std::pair<double, double>> samples;
};

RadialErrorFunction RadialErrorFunction::zero() { return constant(0.0); }

RadialErrorFunction RadialErrorFunction::constant(double epsilon) {
  if (!std::isfinite(epsilon)) throw DomainError("constant error term must be finite");
  auto impl = std::make_shared<Impl>();
  impl->profile = [epsilon](double) { return epsilon; };
  impl->flags = Flags{true, true};
  impl->constant = epsilon;
  impl->sup_bound = std::abs(epsilon);
  // Zero is also the empty power form.
  if (epsilon == 0.0) impl->power = PowerError(std::vector<PowerAtom>{});
  return RadialErrorFunction(std::move(impl));
}

RadialErrorFunction RadialErrorFunction::power(PowerError atoms) {
  auto impl = std::make_shared<Impl>();
  impl->flags = Flags{atoms.nonnegative(), true};
  impl->profile = [atoms](double r) { return atoms(r); };
  if (atoms.empty()) impl->constant = 0.0;
  impl->power = std::move(atoms);
  return RadialErrorFunction(std::move(impl));
}

RadialErrorFunction RadialErrorFunction::power(double coefficient, double exponent) {
  return power(PowerError({PowerAtom{coefficient, exponent}}));
}

RadialErrorFunction RadialErrorFunction::profile(ScalarFunction g, Flags flags,
                                                 std::optional<double> sup_bound) {
  if (!g) throw DomainError("RadialErrorFunction: empty profile");
  if (!std::isfinite(g(0.0))) throw DomainError("RadialErrorFunction: profile(0) must be finite");
  auto impl = std::make_shared<Impl>();
  impl->profile = [g](double r) { return g(std::abs(r)); };
  impl->flags = flags;
  impl->sup_bound = sup_bound;
  return RadialErrorFunction(std::move(impl));
}

RadialErrorFunction RadialErrorFunction::from_samples(
    std::vector<std::pair<double, double>> samples, Flags flags) {
  if (samples.empty()) throw DomainError("RadialErrorFunction: no samples");
  std::sort(samples.begin(), samples.end());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!(samples[i].first >= 0.0) || !std::isfinite(samples[i].first) ||
        !std::isfinite(samples[i].second)) {
      throw DomainError("RadialErrorFunction: samples need finite radii >= 0 and finite values");
    }
    if (i > 0 && samples[i].first == samples[i - 1].first) {
      throw DomainError("RadialErrorFunction: duplicate sample radius");
    }
  }
  auto g = [samples](double r) {
    if (r <= samples.front().first) return samples.front().second;
    if (r >= samples.back().first) return samples.back().second;
    auto it = std::upper_bound(samples.begin(), samples.end(), std::make_pair(r, -HUGE_VAL));
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    const double w = (r - lo.first) / (hi.first - lo.first);
    return (1.0 - w) * lo.second + w * hi.second;
  };
  double sup = 0.0;
  for (const auto& s : samples) sup = std::max(sup, std::abs(s.second));
  auto impl = std::make_shared<Impl>();
  impl->profile = [g](double r) { return g(std::abs(r)); };
  impl->flags = flags;
  impl->sup_bound = sup;  // interpolation never leaves the sample range
  impl->samples = std::move(samples);
  return RadialErrorFunction(std::move(impl));
}

double RadialErrorFunction::operator()(double r) const { return impl_->profile(r); }

const RadialErrorFunction::Flags& RadialErrorFunction::flags() const { return impl_->flags; }

const std::optional<PowerError>& RadialErrorFunction::power_form() const { return impl_->power; }

std::optional<double> RadialErrorFunction::constant_value() const { return impl_->constant; }

const std::vector<std::pair<double, double>>& RadialErrorFunction::samples() const {
  return impl_->samples;
}

SupEstimate RadialErrorFunction::sup_on(double r) const {
  r = std::abs(r);
  if (!impl_->flags.radially_bounded) {
    throw UnboundedProfileError("error profile is declared radially unbounded");
  }
  if (impl_->power) {
    double acc = 0.0;
    for (const auto& a : impl_->power->atoms()) acc += std::abs(a.coefficient) * std::pow(r, a.exponent);
    return {acc, true};
  }
  if (impl_->sup_bound) return {*impl_->sup_bound, true};
  const auto& g = impl_->profile;
  if (impl_->flags.radially_increasing) {
    const double v = std::max(std::abs(g(0.0)), std::abs(g(r)));
    if (!std::isfinite(v)) throw UnboundedProfileError("error profile is not finite on [0, r]");
    return {v, true};
  }
  constexpr int kGrid = 4096;
  double best = 0.0;
  for (int i = 0; i <= kGrid; ++i) {
    const double v = std::abs(g(r * i / kGrid));
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << "error profile has no finite sup on [0, " << r << "]";
      throw UnboundedProfileError(msg.str());
    }
    best = std::max(best, v);
  }
  return {best, false};
}

RadialErrorFunction RadialErrorFunction::scaled(double factor) const {
  if (impl_->power) return power(impl_->power->scaled(factor));
  if (impl_->constant) return constant(*impl_->constant * factor);
  auto impl = std::make_shared<Impl>(*impl_);
  const ScalarFunction g = impl_->profile;
  impl->profile = [g, factor](double r) { return factor * g(r); };
  if (impl->sup_bound) impl->sup_bound = *impl->sup_bound * std::abs(factor);
  if (factor < 0.0) impl->flags.radially_increasing = false;
  for (auto& s : impl->samples) s.second *= factor;
  return RadialErrorFunction(std::move(impl));
}

}  // namespace hhkit
