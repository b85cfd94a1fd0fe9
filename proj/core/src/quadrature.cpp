#include "hhkit/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace hhkit {

namespace {

// Gauss–Kronrod 7/15 abscissae and weights (QUADPACK qk15).
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5 and the centre.
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
};

bool heap_less(const Panel& x, const Panel& y) { return x.error < y.error; }

double checked(const ScalarFunction& f, double t) {
  const double v = f(t);
  if (!std::isfinite(v)) {
    std::ostringstream msg;
    msg << "integrand is not finite at t=" << t;
    throw DomainError(msg.str());
  }
  return v;
}

Panel gauss_kronrod(const ScalarFunction& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = checked(f, centre);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (std::size_t i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    const double sum = checked(f, centre - dx) + checked(f, centre + dx);
    kronrod += kKronrodWeights[i] * sum;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * sum;
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

bool splittable(const Panel& p) {
  const double scale = std::max({1.0, std::abs(p.a), std::abs(p.b)});
  return (p.b - p.a) > 64.0 * std::numeric_limits<double>::epsilon() * scale;
}

IntegralResult adaptive(const ScalarFunction& f, const std::vector<double>& cuts,
                        const QuadratureSpec& spec) {
  std::vector<Panel> heap;
  double frozen_value = 0.0;
  double frozen_error = 0.0;
  int panels = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Panel p = gauss_kronrod(f, cuts[i], cuts[i + 1]);
    ++panels;
    if (splittable(p)) {
      heap.push_back(p);
    } else {
      frozen_value += p.value;
      frozen_error += p.error;
    }
  }
  std::make_heap(heap.begin(), heap.end(), heap_less);

  auto totals = [&] {
    IntegralResult r{frozen_value, frozen_error, panels};
    for (const Panel& p : heap) {
      r.value += p.value;
      r.error_estimate += p.error;
    }
    return r;
  };

  IntegralResult total = totals();
  auto converged = [&](const IntegralResult& r) {
    return r.error_estimate <= std::max(spec.abs_tol, spec.rel_tol * std::abs(r.value));
  };

  while (!converged(total)) {
    if (heap.empty()) break;  // roundoff-limited: nothing left to refine
    if (panels + 1 > spec.max_panels) {
      std::ostringstream msg;
      msg << "quadrature budget of " << spec.max_panels
          << " panels exhausted (error estimate " << total.error_estimate << ")";
      throw BudgetExhaustedError(msg.str(), total);
    }
    std::pop_heap(heap.begin(), heap.end(), heap_less);
    const Panel worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    const Panel left = gauss_kronrod(f, worst.a, mid);
    const Panel right = gauss_kronrod(f, mid, worst.b);
    ++panels;
    total.value += left.value + right.value - worst.value;
    total.error_estimate += left.error + right.error - worst.error;
    for (const Panel& child : {left, right}) {
      if (splittable(child)) {
        heap.push_back(child);
        std::push_heap(heap.begin(), heap.end(), heap_less);
      } else {
        frozen_value += child.value;
        frozen_error += child.error;
      }
    }
    total.panels_used = panels;
    // Incremental error bookkeeping can drift; resynchronise occasionally.
    if (panels % 64 == 0) total = totals();
  }
  return totals();
}

IntegralResult integrate_plain(const ScalarFunction& f, double a, double b,
                               std::span<const double> breakpoints,
                               const QuadratureSpec& spec) {
  std::vector<double> cuts{a};
  std::vector<double> interior;
  for (double c : breakpoints) {
    if (c > a && c < b) interior.push_back(c);
  }
  std::sort(interior.begin(), interior.end());
  interior.erase(std::unique(interior.begin(), interior.end()), interior.end());
  cuts.insert(cuts.end(), interior.begin(), interior.end());
  cuts.push_back(b);
  return adaptive(f, cuts, spec);
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0)) throw DomainError("QuadratureSpec: abs_tol must be > 0");
  if (!(rel_tol >= 0.0)) throw DomainError("QuadratureSpec: rel_tol must be >= 0");
  if (max_panels < 4) throw DomainError("QuadratureSpec: max_panels must be >= 4");
  if (singularity != Singularity::none && !(exponent > 0.0)) {
    throw DomainError("QuadratureSpec: singularity exponent must be > 0");
  }
}

QuadratureSpec QuadratureSpec::with_singularity(Singularity kind, double p) const {
  QuadratureSpec s = *this;
  s.singularity = kind;
  s.exponent = p;
  return s;
}

QuadratureSpec QuadratureSpec::without_singularity() const {
  QuadratureSpec s = *this;
  s.singularity = Singularity::none;
  s.exponent = 1.0;
  return s;
}

QuadratureSpec QuadratureSpec::tightened(double factor) const {
  QuadratureSpec s = *this;
  s.abs_tol /= factor;
  s.rel_tol /= factor;
  return s;
}

IntegralResult integrate(const ScalarFunction& f, double a, double b,
                         const QuadratureSpec& spec) {
  return integrate(f, a, b, std::span<const double>{}, spec);
}

IntegralResult integrate(const ScalarFunction& f, double a, double b,
                         std::span<const double> breakpoints, const QuadratureSpec& spec) {
  spec.validate();
  if (!(a < b)) throw DomainError("integrate: requires a < b");
  const double length = b - a;
  const double p = spec.exponent;
  const QuadratureSpec plain = spec.without_singularity();

  switch (spec.singularity) {
    case Singularity::none:
      return integrate_plain(f, a, b, breakpoints, spec);
    case Singularity::log_left:
      return integrate_exp_weighted(
          [&](double s) {
            const double t = a + length * std::exp(-s);
            return t == a ? 0.0 : length * f(t);
          },
          p, plain);
    case Singularity::log_right:
      return integrate_exp_weighted(
          [&](double s) {
            const double t = b - length * std::exp(-s);
            return t == b ? 0.0 : length * f(t);
          },
          p, plain);
    case Singularity::log_both: {
      const double mid = a + 0.5 * length;
      const double half = 0.5 * length;
      QuadratureSpec halves = plain;
      halves.abs_tol *= 0.5;
      IntegralResult lower = integrate_exp_weighted(
          [&](double s) {
            const double t = mid - half * std::exp(-s);
            return t == mid ? 0.0 : half * f(t);
          },
          p, halves);
      lower += integrate_exp_weighted(
          [&](double s) {
            const double t = mid + half * std::exp(-s);
            return t == mid ? 0.0 : half * f(t);
          },
          p, halves);
      return lower;
    }
  }
  throw DomainError("integrate: unknown singularity kind");
}

IntegralResult integrate_exp_weighted(const ScalarFunction& F, double p,
                                      const QuadratureSpec& spec) {
  spec.validate();
  if (!(p > 0.0)) throw DomainError("integrate_exp_weighted: exponent must be > 0");
  const double inv_p = 1.0 / p;
  const bool power_substitution = p < 1.0;
  // v in [0, 1) -> u = v / (1 - v) in [0, inf); s = u (or u^{1/p}).
  auto mapped = [&](double v) {
    const double w = 1.0 - v;
    const double u = v / w;
    double s = u;
    double jacobian = 1.0 / (w * w);
    if (power_substitution) {
      s = std::pow(u, inv_p);
      jacobian *= inv_p * std::pow(u, inv_p - 1.0);
    }
    const double decay = std::exp(-s);
    if (decay == 0.0 || jacobian == 0.0) return 0.0;
    return F(s) * decay * jacobian;
  };
  return integrate_plain(mapped, 0.0, 1.0, {}, spec);
}

IntegralResult integrate_log_substituted(const ScalarFunction& g, double p,
                                         const QuadratureSpec& spec) {
  if (!(p > 0.0)) throw DomainError("integrate_log_substituted: p must be > 0");
  const double power = p - 1.0;
  return integrate_exp_weighted(
      [&](double s) {
        const double weight = power == 0.0 ? 1.0 : std::pow(s, power);
        return g(std::exp(-s)) * weight;
      },
      p, spec.without_singularity());
}

IntegralResult integrate_endpoint_singular(const ScalarFunction& f, double a, double b,
                                           double left_exponent, double right_exponent,
                                           const QuadratureSpec& spec) {
  spec.validate();
  if (!(a < b)) throw DomainError("integrate_endpoint_singular: requires a < b");
  if (!(left_exponent > 0.0) || !(right_exponent > 0.0)) {
    throw DomainError("integrate_endpoint_singular: exponents must be > 0");
  }
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  QuadratureSpec halves = spec.without_singularity();
  halves.abs_tol *= 0.5;

  IntegralResult total;
  if (left_exponent < 1.0) {
    const double k = 1.0 / left_exponent;
    total += integrate_plain(
        [&](double w) {
          if (w == 0.0) return 0.0;
          const double t = a + half * std::pow(w, k);
          return t == a ? 0.0 : f(t) * half * k * std::pow(w, k - 1.0);
        },
        0.0, 1.0, {}, halves);
  } else {
    total += integrate_plain(f, a, mid, {}, halves);
  }
  if (right_exponent < 1.0) {
    const double k = 1.0 / right_exponent;
    total += integrate_plain(
        [&](double w) {
          if (w == 0.0) return 0.0;
          const double t = b - half * std::pow(w, k);
          return t == b ? 0.0 : f(t) * half * k * std::pow(w, k - 1.0);
        },
        0.0, 1.0, {}, halves);
  } else {
    total += integrate_plain(f, mid, b, {}, halves);
  }
  return total;
}

}  // namespace hhkit
