#include "hhkit/phi_calculus.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>
#include <vector>

#include "hhkit/special.hpp"

namespace hhkit {

namespace {

// Evaluations below this x are taken at this x; the tabulated ratios are
// continuous at 0 and the log-power factors are not.
constexpr double kTinyLog = 1e-12;

// Φ(y) y^{1-p}: bounded for members of Φ_p.
double reduced(const PhiFunction& phi, double y) {
  const double p = phi.class_index();
  y = std::max(y, kTinyLog);
  const double v = phi.at_log(y);
  if (p == 1.0 || v == 0.0) return v;
  return v * std::pow(y, 1.0 - p);
}

// Piecewise Chebyshev–Lobatto table in the log variable.
class LogGrid {
 public:
  static constexpr int kNodes = 16;

  LogGrid() {
    edges_.push_back(0.0);
    for (int e = -6; e <= 9; ++e) edges_.push_back(std::ldexp(1.0, e));
    edges_.push_back(710.0);
    for (std::size_t i = 0; i + 1 < edges_.size(); ++i) {
      for (int j = 0; j < kNodes; ++j) {
        const double c = std::cos(std::numbers::pi * j / (kNodes - 1));
        nodes_.push_back(0.5 * (edges_[i] + edges_[i + 1]) - 0.5 * (edges_[i + 1] - edges_[i]) * c);
      }
    }
    values_.assign(nodes_.size(), 0.0);
  }

  std::size_t size() const { return nodes_.size(); }
  double node(std::size_t i) const { return nodes_[i]; }
  void set(std::size_t i, double v) { values_[i] = v; }
  double upper() const { return edges_.back(); }

  double operator()(double x) const {
    x = std::clamp(x, 0.0, edges_.back());
    auto it = std::upper_bound(edges_.begin(), edges_.end(), x);
    std::size_t panel = it == edges_.begin() ? 0 : static_cast<std::size_t>(it - edges_.begin()) - 1;
    panel = std::min(panel, edges_.size() - 2);
    const std::size_t base = panel * kNodes;
    double num = 0.0;
    double den = 0.0;
    for (int j = 0; j < kNodes; ++j) {
      const double diff = x - nodes_[base + j];
      if (diff == 0.0) return values_[base + j];
      double w = (j % 2 == 0) ? 1.0 : -1.0;
      if (j == 0 || j == kNodes - 1) w *= 0.5;
      const double term = w / diff;
      num += term * values_[base + j];
      den += term;
    }
    return num / den;
  }

 private:
  std::vector<double> edges_;
  std::vector<double> nodes_;
  std::vector<double> values_;
};

double log_gamma_ratio_scale(double p, double norm, int k) {
  // log of Γ(p)^k N^k / Γ(kp), the size of the k-th tabulated ratio.
  const double log_norm = norm > 0.0 ? std::log(norm) : -HUGE_VAL;
  return k * (log_gamma(p) + log_norm) - log_gamma(k * p);
}

}  // namespace

PhiFunction convolve(const PhiFunction& phi, const PhiFunction& psi, const QuadratureSpec& spec) {
  spec.validate();
  const double p = phi.class_index();
  const double q = psi.class_index();
  const double norm = std::exp(log_beta(p, q)) * phi.norm_bound() * psi.norm_bound();
  const double integral = phi.integral() * psi.integral();

  if (phi.closed_form() && psi.closed_form()) {
    const double c = phi.closed_form()->coefficient * psi.closed_form()->coefficient *
                     std::exp(log_beta(p, q));
    return PhiFunction::log_power(c, p + q);
  }

  QuadratureSpec inner = spec.without_singularity();
  auto evaluator = [phi, psi, p, q, inner](double x) {
    // Below kTinyLog the product behaves like x^{p+q-1} times its ratio at kTinyLog.
    const double shrink = x < kTinyLog ? std::pow(x / kTinyLog, p + q - 1.0) : 1.0;
    x = std::max(x, kTinyLog);
    auto f = [&](double sigma) { return phi.at_log(x * (1.0 - sigma)) * psi.at_log(x * sigma); };
    try {
      return shrink * x * integrate_endpoint_singular(f, 0.0, 1.0, q, p, inner).value;
    } catch (const BudgetExhaustedError& e) {
      std::ostringstream msg;
      msg << "convolve: quadrature failed at t=" << std::exp(-x) << ": " << e.what();
      throw BudgetExhaustedError(msg.str(), e.partial());
    }
  };
  return PhiFunction::from_log_function(evaluator, p + q, norm, integral);
}

std::vector<PhiFunction> iterate_phi_sequence(const PhiFunction& phi, int n,
                                              const QuadratureSpec& spec) {
  if (n < 1) throw DomainError("iterate_phi: n must be >= 1");
  spec.validate();
  const double p = phi.class_index();
  const double norm = phi.norm_bound();
  std::vector<PhiFunction> out{phi};
  out.reserve(static_cast<std::size_t>(n));

  if (const auto& form = phi.closed_form()) {
    for (int k = 2; k <= n; ++k) {
      const double c = std::pow(form->coefficient, k) *
                       std::exp(k * log_gamma(p) - log_gamma(k * p));
      out.push_back(PhiFunction::log_power(c, k * p));
    }
    return out;
  }

  auto previous = std::make_shared<LogGrid>();
  for (std::size_t i = 0; i < previous->size(); ++i) {
    previous->set(i, reduced(phi, std::max(previous->node(i), kTinyLog)));
  }

  for (int k = 2; k <= n; ++k) {
    auto current = std::make_shared<LogGrid>();
    const double left = (k - 1) * p;
    QuadratureSpec inner = spec.without_singularity();
    const double scale = std::exp(log_gamma_ratio_scale(p, norm > 0.0 ? norm : 1.0, k));
    inner.abs_tol = std::max(1e-14 * scale, std::numeric_limits<double>::min());
    inner.rel_tol = std::max(inner.rel_tol, 1e-10);
    inner.max_panels = std::max(inner.max_panels, 4000);
    const LogGrid& prev = *previous;
    for (std::size_t i = 0; i < current->size(); ++i) {
      const double x = std::max(current->node(i), kTinyLog);
      auto f = [&](double sigma) {
        const double one_minus = 1.0 - sigma;
        double v = reduced(phi, x * one_minus) * prev(x * sigma);
        if (v == 0.0) return 0.0;
        if (p != 1.0) v *= std::pow(one_minus, p - 1.0);
        if (left != 1.0) v *= std::pow(sigma, left - 1.0);
        return v;
      };
      current->set(i, integrate_endpoint_singular(f, 0.0, 1.0, left, p, inner).value);
    }
    previous = current;

    const double exponent = k * p - 1.0;
    std::shared_ptr<const LogGrid> table = current;
    auto evaluator = [table, exponent](double x) {
      const double ratio = (*table)(x);
      if (ratio == 0.0 || exponent == 0.0) return ratio;
      return ratio * std::pow(x, exponent);
    };
    const double norm_k = std::exp(log_gamma_ratio_scale(p, norm, k));
    out.push_back(PhiFunction::from_log_function(evaluator, k * p, norm_k,
                                                 std::pow(phi.integral(), k)));
  }
  return out;
}

PhiFunction iterate_phi(const PhiFunction& phi, int n, const QuadratureSpec& spec) {
  return iterate_phi_sequence(phi, n, spec).back();
}

int phi_n_offset(double p) {
  if (!(p > 0.0)) throw DomainError("phi_n_offset: p must be > 0");
  return std::max(1, static_cast<int>(std::ceil(2.0 / p - 1e-12)));
}

double phi_n_sup_bound(double p, double norm, int n, double delta) {
  if (!(p > 0.0)) throw DomainError("phi_n_sup_bound: p must be > 0");
  if (n < 1) throw DomainError("phi_n_sup_bound: n must be >= 1");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("phi_n_sup_bound: delta must lie in (0,1)");
  if (norm == 0.0) return 0.0;
  const int n0 = phi_n_offset(p);
  const double L = -std::log(delta);
  const double log_norm = std::log(std::abs(norm));
  const double lg = log_gamma(p);
  const double log_bound = (n0 * p - 1.0) * std::log(L) + n0 * (lg + log_norm) +
                           n * (lg + p * std::log(L) + log_norm) - log_gamma(n * p);
  return std::exp(log_bound);
}

double gamma_ratio(double x, int n, double p) {
  if (!(p > 0.0) || n < 1) throw DomainError("gamma_ratio: requires n >= 1 and p > 0");
  if (x == 0.0) return 0.0;
  const double magnitude = std::exp(n * std::log(std::abs(x)) - log_gamma(n * p));
  return (x < 0.0 && n % 2 == 1) ? -magnitude : magnitude;
}

double smear(const ScalarFunction& g, const PhiFunction& phi, int n, const QuadratureSpec& spec) {
  const PhiFunction phi_n = iterate_phi(phi, n, spec);
  QuadratureSpec outer = spec.without_singularity();
  outer.max_panels = std::max(outer.max_panels, 4000);
  auto F = [&](double x) { return g(std::exp(-x)) * phi_n.at_log(x); };
  return integrate_exp_weighted(F, phi_n.class_index(), outer).value;
}

}  // namespace hhkit
