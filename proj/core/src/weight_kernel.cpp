#include "hhkit/weight_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace hhkit {

namespace {

constexpr double kNormalizationTol = 1e-8;
constexpr double kUnboundedThreshold = 1e12;

double weight_integral(const WeightFunction& rho, const QuadratureSpec& spec) {
  if (std::holds_alternative<WeightFunction::Callable>(rho.representation())) {
    const auto cuts = rho.breakpoints();
    return integrate([&](double t) { return rho(t); }, 0.0, 1.0, cuts, spec).value;
  }
  return rho.declared_integral();
}

}  // namespace

WeightFunction validate_weight(const WeightFunction& rho, const QuadratureSpec& spec,
                               bool rescale) {
  constexpr int kGrid = 4097;
  for (int i = 0; i < kGrid; ++i) {
    const double t = static_cast<double>(i) / (kGrid - 1);
    const double v = rho(t);
    if (std::isnan(v)) {
      std::ostringstream msg;
      msg << "weight is NaN at t=" << t;
      throw DomainError(msg.str());
    }
    if (v < 0.0) {
      std::ostringstream msg;
      msg << "weight is negative at t=" << t << " (value " << v << ")";
      throw NegativeWeightError(msg.str(), t);
    }
  }
  const double integral = weight_integral(rho, spec);
  if (!(integral > 0.0)) {
    throw NonNormalizableError("weight has nonpositive integral and cannot be normalised");
  }
  if (std::abs(integral - 1.0) <= kNormalizationTol) return rho;
  if (!rescale) {
    std::ostringstream msg;
    msg << "weight integral is " << integral << ", expected 1 (pass rescale to normalise)";
    throw DomainError(msg.str());
  }
  return rho.scaled(1.0 / integral);
}

double lambda_of(const WeightFunction& rho, const QuadratureSpec& spec) {
  const auto& rep = rho.representation();
  if (const auto* c = std::get_if<WeightFunction::Constant>(&rep)) return 0.5 * c->value;
  if (const auto* p = std::get_if<WeightFunction::Polynomial>(&rep)) {
    double acc = 0.0;
    for (std::size_t k = 0; k < p->coefficients.size(); ++k) {
      acc += p->coefficients[k] / static_cast<double>(k + 2);
    }
    return acc;
  }
  if (const auto* pl = std::get_if<WeightFunction::PiecewiseLinear>(&rep)) {
    // t·ρ(t) is quadratic on each segment, so Simpson's rule is exact.
    double acc = 0.0;
    for (std::size_t i = 1; i < pl->knots.size(); ++i) {
      const double a = pl->knots[i - 1];
      const double b = pl->knots[i];
      const double m = 0.5 * (a + b);
      const double vm = 0.5 * (pl->values[i - 1] + pl->values[i]);
      acc += (b - a) / 6.0 * (a * pl->values[i - 1] + 4.0 * m * vm + b * pl->values[i]);
    }
    return acc;
  }
  const auto cuts = rho.breakpoints();
  return integrate([&](double t) { return t * rho(t); }, 0.0, 1.0, cuts, spec).value;
}

PsiKernel::PsiKernel(WeightFunction source, int n_terms)
    : source_(std::move(source)), n_terms_(n_terms) {
  if (n_terms < 1) throw DomainError("build_psi: n_terms must be >= 1");
}

double PsiKernel::operator()(double t) const {
  double acc = 0.0;
  for (int n = 0; n < n_terms_; ++n) {
    acc += std::ldexp(source_.dyadic_average(t, n), -n);
  }
  return 0.5 * acc;
}

double PsiKernel::l1_tail_bound() const { return std::ldexp(1.0, -n_terms_); }

PsiKernel build_psi(const WeightFunction& rho, int n_terms) { return PsiKernel(rho, n_terms); }

PsiResidual check_psi_equation(const PsiKernel& kernel, int grid_size, double tol) {
  if (grid_size < 2) throw DomainError("check_psi_equation: grid_size must be >= 2");
  const WeightFunction& rho = kernel.source();
  auto residual = [&](double t) {
    return rho(t) - 2.0 * kernel(t) + 0.5 * (kernel(0.5 * t) + kernel(0.5 * (t + 1.0)));
  };
  PsiResidual out;
  if (!rho.is_continuous()) {
    QuadratureSpec spec;
    spec.abs_tol = 0.1 * tol;
    spec.max_panels = 4000;
    const auto cuts = rho.breakpoints();
    out.l1_mode = true;
    out.max_residual =
        integrate([&](double t) { return std::abs(residual(t)); }, 0.0, 1.0, cuts, spec).value;
  } else {
    for (int i = 0; i < grid_size; ++i) {
      const double t = static_cast<double>(i) / (grid_size - 1);
      const double r = std::abs(residual(t));
      if (r > out.max_residual) {
        out.max_residual = r;
        out.witness = t;
      }
    }
  }
  out.pass = out.max_residual <= tol;
  return out;
}

PsiIntegrals psi_lambda_identities(const PsiKernel& kernel, const QuadratureSpec& spec) {
  auto psi = [&](double t) { return kernel(t); };
  const IntegralResult lower = integrate(psi, 0.0, 0.5, spec);
  const IntegralResult upper = integrate(psi, 0.5, 1.0, spec);
  PsiIntegrals out;
  out.lower_half = lower.value;
  out.upper_half = upper.value;
  out.total = lower.value + upper.value;
  out.error_estimate = lower.error_estimate + upper.error_estimate;
  return out;
}

PhiFunction symmetrize_phi(const WeightFunction& rho, std::optional<GrowthBound> growth) {
  if (rho.is_constant() && (!growth || growth->p == 1.0)) return PhiFunction::constant(rho(0.5));
  auto log_form = [rho](double x) {
    const double s = std::exp(-x);
    return 0.5 * (rho(0.5 * (1.0 + s)) + rho(0.5 * (1.0 - s)));
  };
  double p = 1.0;
  double norm = 0.0;
  if (growth) {
    p = growth->p;
    norm = growth->c;
  } else {
    norm = phi_norm(PhiFunction::from_log_function(log_form, 1.0, 0.0, 0.0), 1.0).estimate;
  }
  return PhiFunction::from_log_function(log_form, p, norm, rho.declared_integral());
}

GrowthCheck check_growth_condition(const WeightFunction& rho, GrowthBound bound,
                                   int grid_size) {
  if (grid_size < 1) throw DomainError("check_growth_condition: grid_size must be >= 1");
  GrowthCheck out;
  for (int i = 0; i < grid_size; ++i) {
    const double t = (static_cast<double>(i) + 0.5) / grid_size;
    if (t == 0.5) continue;
    const double power = bound.p - 1.0;
    const double rhs =
        power == 0.0 ? bound.c : bound.c * std::pow(-std::log(std::abs(1.0 - 2.0 * t)), power);
    ++out.samples_checked;
    const double value = rho(t);
    if (value > rhs * (1.0 + 1e-12) + 1e-15) {
      out.pass = false;
      out.witness = t;
      return out;
    }
  }
  return out;
}

namespace {

struct NormSample {
  double value;
  double x;
};

// |ln t|^{1-p} |φ(t)| = x^{1-p} |Φ(x)|, evaluated in log space so that the
// product stays finite when one factor overflows.
double weighted_magnitude(double x, double phi_value, double p) {
  const double a = std::abs(phi_value);
  if (a == 0.0) return 0.0;
  if (p == 1.0) return a;
  return std::exp((1.0 - p) * std::log(x) + std::log(a));
}

}  // namespace

PhiNormEstimate phi_norm(const ScalarFunction& phi, double p, int grid_size) {
  return phi_norm(PhiFunction::from_function(phi, p, 0.0, 0.0), p, grid_size);
}

PhiNormEstimate phi_norm(const PhiFunction& phi, double p, int grid_size) {
  if (!(p > 0.0)) throw DomainError("phi_norm: p must be > 0");
  if (grid_size < 1) throw DomainError("phi_norm: grid_size must be >= 1");

  // Sample at representable t and take x = -ln t from it, so functions given
  // on (0, 1) are never evaluated at a rounded image of x near t = 1.
  auto sample = [&](double t) {
    const double x = -std::log(t);
    return NormSample{weighted_magnitude(x, phi(t), p), x};
  };

  NormSample interior{0.0, 1.0};
  for (int i = 0; i < grid_size; ++i) {
    const NormSample s = sample((static_cast<double>(i) + 0.5) / grid_size);
    if (s.value > interior.value) interior = s;
  }

  // Geometric refinement towards both ends of (0, 1).
  constexpr int kNearOne = 416;  // 1 - t down to 2^{-52}
  constexpr int kNearZero = 75;  // -ln t up to 2^{9.375} ≈ 663
  std::vector<NormSample> near_one;
  std::vector<NormSample> near_zero;
  for (int j = 1; j <= kNearOne; ++j) near_one.push_back(sample(1.0 - std::exp2(-j / 8.0)));
  for (int j = 1; j <= kNearZero; ++j) near_zero.push_back(sample(std::exp(-std::exp2(j / 8.0))));

  auto sup_at_depth = [&](double fraction) {
    NormSample best = interior;
    auto scan = [&](const std::vector<NormSample>& side) {
      const auto depth = static_cast<std::size_t>(std::ceil(fraction * side.size()));
      for (std::size_t k = 0; k < depth; ++k) {
        if (side[k].value > best.value) best = side[k];
      }
    };
    scan(near_one);
    scan(near_zero);
    return best;
  };

  const NormSample quarter = sup_at_depth(0.25);
  const NormSample half = sup_at_depth(0.5);
  const NormSample full = sup_at_depth(1.0);

  PhiNormEstimate out;
  out.estimate = full.value;
  out.argmax = std::exp(-full.x);
  const bool growing = quarter.value * 1.01 < half.value && half.value * 1.01 < full.value;
  out.bounded = std::isfinite(full.value) && full.value <= kUnboundedThreshold && !growing;
  return out;
}

}  // namespace hhkit
