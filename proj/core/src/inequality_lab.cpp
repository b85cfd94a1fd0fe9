#include "hhkit/inequality_lab.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "hhkit/error_transforms.hpp"

namespace hhkit {

void SegmentFunction::validate() const {
  if (!g) throw DomainError("SegmentFunction: empty evaluator");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("SegmentFunction: radius must be > 0");
}

namespace {

std::atomic<unsigned> g_lab_threads{0};

double grid_point(int i, int n) { return static_cast<double>(i) / (n - 1); }

void check_grid(int n, const char* who) {
  if (n < 2) {
    std::ostringstream msg;
    msg << who << ": grid must have at least 2 points";
    throw DomainError(msg.str());
  }
}

struct Sample {
  double violation = -HUGE_VAL;
  std::vector<double> witness;
  double quad_error = 0.0;
  long long samples = 0;
};

// Merges `b` into `a`; on ties the earlier (already held) witness wins.
void merge(Sample& a, const Sample& b) {
  if (b.violation > a.violation) {
    a.violation = b.violation;
    a.witness = b.witness;
  }
  a.quad_error = std::max(a.quad_error, b.quad_error);
  a.samples += b.samples;
}

// Evaluates rows 0..rows-1 (possibly concurrently) and reduces them in row
// order, so the report does not depend on the thread count.
Sample reduce_rows(int rows, const std::function<Sample(int)>& row) {
  std::vector<Sample> results(static_cast<std::size_t>(rows));
  unsigned threads = lab_threads();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(rows)));
  if (threads <= 1) {
    for (int i = 0; i < rows; ++i) results[static_cast<std::size_t>(i)] = row(i);
  } else {
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (int i = next++; i < rows; i = next++) {
          try {
            results[static_cast<std::size_t>(i)] = row(i);
          } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }
  Sample total;
  for (const auto& r : results) merge(total, r);
  return total;
}

CheckReport make_report(const char* name, const Sample& s, double tol,
                        std::vector<std::string> witness_names) {
  CheckReport out;
  out.check = name;
  out.samples_checked = s.samples;
  out.max_violation = s.samples > 0 ? s.violation : 0.0;
  out.witness = s.witness;
  out.witness_names = std::move(witness_names);
  out.tolerance = tol + s.quad_error;
  out.pass = out.max_violation <= out.tolerance;
  return out;
}

// Breakpoints of g mapped to the parameter of t ↦ g(t u + (1-t) v).
std::vector<double> mapped_breakpoints(const SegmentFunction& f, const WeightFunction* rho,
                                       double u, double v) {
  std::vector<double> cuts;
  if (rho) cuts = rho->breakpoints();
  for (double b : f.breakpoints) {
    const double t = (b - v) / (u - v);
    if (t > 0.0 && t < 1.0) cuts.push_back(t);
  }
  std::sort(cuts.begin(), cuts.end());
  return cuts;
}

QuadratureSpec lab_spec(const QuadratureSpec& spec) {
  QuadratureSpec s = spec.without_singularity();
  s.max_panels = std::max(s.max_panels, 4000);
  return s;
}

}  // namespace

void set_lab_threads(unsigned threads) { g_lab_threads = threads; }

unsigned lab_threads() {
  const unsigned t = g_lab_threads.load();
  if (t != 0) return t;
  return std::max(1u, std::thread::hardware_concurrency());
}

CheckReport check_jensen(const SegmentFunction& f, const RadialErrorFunction& alpha_j, int grid_n,
                         double tol) {
  f.validate();
  check_grid(grid_n, "check_jensen");
  std::vector<double> values(static_cast<std::size_t>(grid_n));
  for (int i = 0; i < grid_n; ++i) values[static_cast<std::size_t>(i)] = f(grid_point(i, grid_n));
  const Sample s = reduce_rows(grid_n - 1, [&](int i) {
    Sample row;
    const double u = grid_point(i, grid_n);
    for (int j = i + 1; j < grid_n; ++j) {
      const double v = grid_point(j, grid_n);
      const double lhs = f(0.5 * (u + v));
      const double rhs = 0.5 * (values[static_cast<std::size_t>(i)] + values[static_cast<std::size_t>(j)]) +
                         alpha_j((v - u) * f.radius);
      const double viol = lhs - rhs;
      ++row.samples;
      if (viol > row.violation) {
        row.violation = viol;
        row.witness = {u, v};
      }
    }
    return row;
  });
  return make_report("jensen", s, tol, {"u", "v"});
}

CheckReport check_upper_hh(const SegmentFunction& f, const WeightFunction& rho, double lambda,
                           const RadialErrorFunction& alpha_h, int subseg_grid,
                           const QuadratureSpec& spec, double tol) {
  f.validate();
  check_grid(subseg_grid, "check_upper_hh");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw DomainError("check_upper_hh: λ must lie in [0,1]");
  spec.validate();
  const QuadratureSpec inner = lab_spec(spec);
  std::vector<double> values(static_cast<std::size_t>(subseg_grid));
  for (int i = 0; i < subseg_grid; ++i) values[static_cast<std::size_t>(i)] = f(grid_point(i, subseg_grid));
  const Sample s = reduce_rows(subseg_grid, [&](int i) {
    Sample row;
    const double u = grid_point(i, subseg_grid);
    for (int j = 0; j < subseg_grid; ++j) {
      if (j == i) continue;
      const double v = grid_point(j, subseg_grid);
      const auto cuts = mapped_breakpoints(f, &rho, u, v);
      const IntegralResult mean =
          integrate([&](double t) { return f(t * u + (1.0 - t) * v) * rho(t); }, 0.0, 1.0, cuts, inner);
      const double rhs = lambda * values[static_cast<std::size_t>(i)] +
                         (1.0 - lambda) * values[static_cast<std::size_t>(j)] +
                         alpha_h(std::abs(u - v) * f.radius);
      const double viol = mean.value - rhs;
      ++row.samples;
      row.quad_error = std::max(row.quad_error, mean.error_estimate);
      if (viol > row.violation) {
        row.violation = viol;
        row.witness = {u, v};
      }
    }
    return row;
  });
  return make_report("upper_hh", s, tol, {"x", "y"});
}

CheckReport check_lower_hh(const SegmentFunction& f, const RadialErrorFunction& alpha_h,
                           int subseg_grid, const QuadratureSpec& spec, double tol) {
  f.validate();
  check_grid(subseg_grid, "check_lower_hh");
  spec.validate();
  const QuadratureSpec inner = lab_spec(spec);
  const Sample s = reduce_rows(subseg_grid - 1, [&](int i) {
    Sample row;
    const double u = grid_point(i, subseg_grid);
    for (int j = i + 1; j < subseg_grid; ++j) {
      const double v = grid_point(j, subseg_grid);
      const auto cuts = mapped_breakpoints(f, nullptr, u, v);
      const IntegralResult mean =
          integrate([&](double t) { return f(t * u + (1.0 - t) * v); }, 0.0, 1.0, cuts, inner);
      const double viol = f(0.5 * (u + v)) - mean.value - alpha_h((v - u) * f.radius);
      ++row.samples;
      row.quad_error = std::max(row.quad_error, mean.error_estimate);
      if (viol > row.violation) {
        row.violation = viol;
        row.witness = {u, v};
      }
    }
    return row;
  });
  return make_report("lower_hh", s, tol, {"x", "y"});
}

CheckReport check_symmetrized_hh(const SegmentFunction& f, const WeightFunction& rho,
                                 const RadialErrorFunction& alpha_h, int subseg_grid,
                                 const QuadratureSpec& spec, double tol) {
  f.validate();
  check_grid(subseg_grid, "check_symmetrized_hh");
  spec.validate();
  const QuadratureSpec inner = lab_spec(spec);
  std::vector<double> rho_cuts;
  for (double b : rho.breakpoints()) {
    const double x = std::abs(2.0 * b - 1.0);
    if (x > 0.0 && x < 1.0) rho_cuts.push_back(x);
  }
  auto phi = [&](double s) { return 0.5 * (rho(0.5 * (1.0 + s)) + rho(0.5 * (1.0 - s))); };
  const Sample total = reduce_rows(subseg_grid - 1, [&](int i) {
    Sample row;
    const double u = grid_point(i, subseg_grid);
    for (int j = i + 1; j < subseg_grid; ++j) {
      const double v = grid_point(j, subseg_grid);
      auto point = [&](double t) { return t * u + (1.0 - t) * v; };
      std::vector<double> cuts = rho_cuts;
      for (double t : mapped_breakpoints(f, nullptr, u, v)) {
        const double x = std::abs(2.0 * t - 1.0);
        if (x > 0.0 && x < 1.0) cuts.push_back(x);
      }
      std::sort(cuts.begin(), cuts.end());
      const IntegralResult lhs = integrate(
          [&](double s) { return (f(point(0.5 * (1.0 + s))) + f(point(0.5 * (1.0 - s)))) * phi(s); },
          0.0, 1.0, cuts, inner);
      const double viol = lhs.value - f(u) - f(v) - 2.0 * alpha_h((v - u) * f.radius);
      ++row.samples;
      row.quad_error = std::max(row.quad_error, lhs.error_estimate);
      if (viol > row.violation) {
        row.violation = viol;
        row.witness = {u, v};
      }
    }
    return row;
  });
  return make_report("symmetrized_hh", total, tol, {"x", "y"});
}

CheckReport check_pointwise_bound(const SegmentFunction& f, const RadialErrorFunction& alpha_j,
                                  EnvelopeKind kind, int grid, double tail_tol, double tol) {
  f.validate();
  check_grid(grid, "check_pointwise_bound");
  std::vector<double> values(static_cast<std::size_t>(grid));
  for (int i = 0; i < grid; ++i) values[static_cast<std::size_t>(i)] = f(grid_point(i, grid));
  // The envelope only depends on (t, |u - v|), so it is tabulated once per
  // subsegment length.
  std::vector<std::vector<double>> envelope(static_cast<std::size_t>(grid));
  for (int k = 1; k < grid; ++k) {
    auto& row = envelope[static_cast<std::size_t>(k)];
    row.resize(static_cast<std::size_t>(grid));
    for (int m = 0; m < grid; ++m) {
      row[static_cast<std::size_t>(m)] =
          pointwise_envelope(kind, alpha_j, grid_point(m, grid), grid_point(k, grid) * f.radius, tail_tol);
    }
  }
  const Sample s = reduce_rows(grid - 1, [&](int i) {
    Sample row;
    const double u = grid_point(i, grid);
    for (int j = i + 1; j < grid; ++j) {
      const double v = grid_point(j, grid);
      const auto& env = envelope[static_cast<std::size_t>(j - i)];
      for (int m = 0; m < grid; ++m) {
        const double t = grid_point(m, grid);
        const double lhs = f(t * u + (1.0 - t) * v);
        const double rhs = t * values[static_cast<std::size_t>(i)] +
                           (1.0 - t) * values[static_cast<std::size_t>(j)] + env[static_cast<std::size_t>(m)];
        const double viol = lhs - rhs;
        ++row.samples;
        if (viol > row.violation) {
          row.violation = viol;
          row.witness = {u, v, t};
        }
      }
    }
    return row;
  });
  return make_report("pointwise_bound", s, tol, {"x", "y", "t"});
}

// ---------------------------------------------------------------------------
// Generators

namespace {

struct Trig {
  std::vector<double> amplitude;
  std::vector<double> phase;
  double operator()(double t) const {
    double acc = 0.0;
    for (std::size_t k = 0; k < amplitude.size(); ++k) {
      acc += amplitude[k] * std::sin(2.0 * std::numbers::pi * static_cast<double>(k + 1) * t + phase[k]);
    }
    return acc;
  }
};

Trig random_trig(std::uint64_t seed) {
  constexpr int kHarmonics = 6;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  std::uniform_real_distribution<double> ph(0.0, 2.0 * std::numbers::pi);
  Trig h;
  for (int k = 1; k <= kHarmonics; ++k) {
    h.amplitude.push_back(amp(rng) / k);
    h.phase.push_back(ph(rng));
  }
  return h;
}

std::pair<ScalarFunction, std::vector<double>> convex_base(PerturbBase base) {
  switch (base) {
    case PerturbBase::quadratic:
      return {[](double t) { return (t - 0.5) * (t - 0.5); }, {}};
    case PerturbBase::abs:
      return {[](double t) { return 0.5 * std::abs(2.0 * t - 1.0); }, {0.5}};
    case PerturbBase::exp:
      return {[](double t) { return std::exp(t) - 1.0; }, {}};
  }
  throw DomainError("unknown convex base");
}

const char* base_name(PerturbBase base) {
  switch (base) {
    case PerturbBase::quadratic: return "quadratic";
    case PerturbBase::abs: return "abs";
    case PerturbBase::exp: return "exp";
  }
  return "?";
}

}  // namespace

SegmentFunction make_perturbed_convex(PerturbBase base, double epsilon, std::uint64_t seed,
                                      bool adversarial, double radius) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw DomainError("make_perturbed_convex: epsilon must be >= 0");
  }
  auto [g0, cuts] = convex_base(base);
  Trig h = random_trig(seed);
  double scale = 0.0;
  if (adversarial) {
    double sup = 0.0;
    for (int i = 0; i <= 4096; ++i) sup = std::max(sup, std::abs(h(i / 4096.0)));
    scale = sup > 0.0 ? epsilon / sup : 0.0;
  } else {
    double l1 = 0.0;
    for (double a : h.amplitude) l1 += std::abs(a);
    scale = l1 > 0.0 ? 0.5 * epsilon / l1 : 0.0;  // ‖h‖_∞ <= Σ|b_k| = ε/2
  }
  for (double& a : h.amplitude) a *= scale;
  SegmentFunction f;
  f.g = [g0 = g0, h](double t) { return g0(t) + h(t); };
  f.radius = radius;
  f.breakpoints = cuts;
  std::ostringstream label;
  label << base_name(base) << "+eps" << epsilon << (adversarial ? "-adversarial" : "") << "#" << seed;
  f.label = label.str();
  f.validate();
  if (!adversarial) {
    const CheckReport r = check_jensen(f, RadialErrorFunction::constant(epsilon), 513, 1e-12);
    if (!r.pass) {
      std::ostringstream msg;
      msg << "make_perturbed_convex: generated function violates the ε-Jensen inequality by "
          << r.max_violation;
      throw GeneratorError(msg.str());
    }
  }
  return f;
}

SegmentFunction make_power_premise_function(PerturbBase base, double a, double q,
                                            std::uint64_t seed, double radius) {
  if (!(a >= 0.0) || !std::isfinite(a)) throw DomainError("make_power_premise_function: a must be >= 0");
  if (!(q > 0.0 && q <= 2.0)) throw DomainError("make_power_premise_function: q must lie in (0, 2]");
  if (!(radius > 0.0)) throw DomainError("make_power_premise_function: radius must be > 0");
  auto [g0, cuts] = convex_base(base);
  Trig h = random_trig(seed);
  // |h''| <= Σ |b_k| (2πk)^2; for a midpoint gap δ the Jensen defect of h is
  // at most |h''|_∞ δ^2 / 8 <= a r^q δ^q once |h''|_∞ <= 8 a r^q and δ <= 1.
  double curvature = 0.0;
  for (std::size_t k = 0; k < h.amplitude.size(); ++k) {
    const double w = 2.0 * std::numbers::pi * static_cast<double>(k + 1);
    curvature += std::abs(h.amplitude[k]) * w * w;
  }
  const double budget = 0.95 * 8.0 * a * std::pow(radius, q);
  const double scale = curvature > 0.0 ? budget / curvature : 0.0;
  for (double& b : h.amplitude) b *= scale;
  SegmentFunction f;
  f.g = [g0 = g0, h](double t) { return g0(t) + h(t); };
  f.radius = radius;
  f.breakpoints = cuts;
  std::ostringstream label;
  label << base_name(base) << "+power(" << a << "," << q << ")#" << seed;
  f.label = label.str();
  f.validate();
  const CheckReport r = check_jensen(f, RadialErrorFunction::power(a, q), 129, 1e-12);
  if (!r.pass) {
    std::ostringstream msg;
    msg << "make_power_premise_function: generated function violates the Jensen premise by "
        << r.max_violation;
    throw GeneratorError(msg.str());
  }
  return f;
}

// ---------------------------------------------------------------------------
// End-to-end theorem checks

const char* to_string(Theorem theorem) {
  switch (theorem) {
    case Theorem::thm1: return "thm1";
    case Theorem::thm3: return "thm3";
    case Theorem::thmA2: return "thmA2";
    case Theorem::thmA2plus: return "thmA2plus";
    case Theorem::thmA1: return "thmA1";
    case Theorem::corA1: return "corA1";
    case Theorem::corA3: return "corA3";
    case Theorem::corA3plus: return "corA3plus";
  }
  return "?";
}

Theorem theorem_from_string(const std::string& name) {
  for (Theorem t : {Theorem::thm1, Theorem::thm3, Theorem::thmA2, Theorem::thmA2plus, Theorem::thmA1,
                    Theorem::corA1, Theorem::corA3, Theorem::corA3plus}) {
    if (name == to_string(t)) return t;
  }
  throw DomainError("unknown theorem '" + name + "'");
}

const char* to_string(TheoremStatus status) {
  switch (status) {
    case TheoremStatus::pass: return "pass";
    case TheoremStatus::premise_failed: return "premise_failed";
    case TheoremStatus::conclusion_failed: return "conclusion_failed";
  }
  return "?";
}

namespace {

bool jensen_side(Theorem t) {
  return t != Theorem::thmA1 && t != Theorem::corA1;
}

bool is_corollary(Theorem t) {
  return t == Theorem::corA1 || t == Theorem::corA3 || t == Theorem::corA3plus;
}

const PowerError& require_power(const std::optional<RadialErrorFunction>& alpha, const char* what) {
  if (!alpha) {
    throw DomainError(std::string(what) + " error term is required for this theorem");
  }
  if (!alpha->power_form()) {
    throw DomainError(std::string(what) + " error term must be of power form for this theorem");
  }
  return *alpha->power_form();
}

std::string describe(const PowerError& p, const char* name) {
  std::ostringstream out;
  out.precision(10);
  out << name << "(u) =";
  if (p.empty()) out << " 0";
  bool first = true;
  for (const auto& a : p.atoms()) {
    out << (first ? " " : " + ") << a.coefficient << "·|u|^" << a.exponent;
    first = false;
  }
  return out.str();
}

PowerError map_atoms(const PowerError& p, const std::function<double(double)>& factor) {
  std::vector<PowerAtom> out;
  for (const auto& a : p.atoms()) out.push_back({a.coefficient * factor(a.exponent), a.exponent});
  return PowerError(std::move(out));
}

}  // namespace

PreparedTheorem::PreparedTheorem(Theorem theorem, TheoremInputs inputs, double radius,
                                 const QuadratureSpec& spec)
    : theorem_(theorem), inputs_(std::move(inputs)), radius_(radius), spec_(spec), rho_(inputs_.rho) {
  spec_.validate();
  if (!(radius_ > 0.0)) throw DomainError("PreparedTheorem: radius must be > 0");
  check_grid(inputs_.grid, "PreparedTheorem");
  if (is_corollary(theorem_)) {
    if (!rho_.is_constant() || std::abs(rho_(0.5) - 1.0) > 1e-12) {
      throw DomainError("corollaries are stated for the uniform weight ρ ≡ 1");
    }
  }
  if (inputs_.lambda && jensen_side(theorem_)) {
    throw DomainError("λ is derived from ρ for the Jensen-to-HH direction and cannot be given");
  }
  rho_ = validate_weight(rho_, spec_);
  lambda_ = lambda_of(rho_, spec_);
  if (inputs_.lambda) {
    if (!(*inputs_.lambda >= 0.0 && *inputs_.lambda <= 1.0)) throw DomainError("λ must lie in [0,1]");
    lambda_ = *inputs_.lambda;
  }

  const int n = inputs_.grid;
  auto tabulate = [&](const std::function<double(double)>& alpha_h_at) {
    std::vector<std::pair<double, double>> samples;
    for (int k = 0; k < n; ++k) {
      const double r = grid_point(k, n) * radius_;
      samples.emplace_back(r, alpha_h_at(r));
    }
    return RadialErrorFunction::from_samples(std::move(samples), {false, true});
  };

  switch (theorem_) {
    case Theorem::thm1: {
      if (!inputs_.alpha_j) throw DomainError("thm1 needs a Jensen error term");
      const auto& aj = *inputs_.alpha_j;
      conclusion_error_ = tabulate([&](double r) {
        return jensen_to_upper_hh_series(aj, rho_, r, inputs_.tail_tol, spec_).alpha_h;
      });
      description_ = "alpha_H tabulated from the dyadic series at " + std::to_string(n) + " radii";
      break;
    }
    case Theorem::thm3: {
      if (!inputs_.alpha_j) throw DomainError("thm3 needs a Jensen error term");
      const auto& aj = *inputs_.alpha_j;
      conclusion_error_ = tabulate([&](double r) {
        return jensen_to_upper_hh_tabor(aj, rho_, r, inputs_.tail_tol, spec_).alpha_h;
      });
      description_ = "alpha_H tabulated from the Tabor series at " + std::to_string(n) + " radii";
      break;
    }
    case Theorem::thmA2:
    case Theorem::thmA2plus: {
      const auto& mu = require_power(inputs_.alpha_j, "Jensen");
      const auto kind = theorem_ == Theorem::thmA2 ? TakagiKind::T : TakagiKind::S;
      const PowerError out = jensen_to_hh_power(mu, rho_, kind, spec_);
      conclusion_error_ = RadialErrorFunction::power(out);
      description_ = describe(out, "alpha_H");
      break;
    }
    case Theorem::corA3:
    case Theorem::corA3plus: {
      const auto& mu = require_power(inputs_.alpha_j, "Jensen");
      if (theorem_ == Theorem::corA3plus && !mu.nonnegative()) {
        throw SignError("corA3plus needs nonnegative coefficients");
      }
      const PowerError out = theorem_ == Theorem::corA3 ? map_atoms(mu, takagi_T_integral)
                                                        : map_atoms(mu, takagi_S_integral);
      conclusion_error_ = RadialErrorFunction::power(out);
      description_ = describe(out, "alpha_H");
      break;
    }
    case Theorem::thmA1: {
      const auto& mu = require_power(inputs_.alpha_h, "Hermite-Hadamard");
      const PowerError out = hh_to_jensen_power(mu, rho_, spec_);
      conclusion_error_ = RadialErrorFunction::power(out);
      description_ = describe(out, "alpha_J");
      break;
    }
    case Theorem::corA1: {
      const auto& mu = require_power(inputs_.alpha_h, "Hermite-Hadamard");
      const PowerError out = map_atoms(mu, [](double q) { return (q + 1.0) / q; });
      conclusion_error_ = RadialErrorFunction::power(out);
      description_ = describe(out, "alpha_J");
      break;
    }
  }
}

TheoremReport PreparedTheorem::run(const SegmentFunction& f) const {
  f.validate();
  if (std::abs(f.radius - radius_) > 1e-12 * radius_) {
    throw DomainError("PreparedTheorem::run: segment radius differs from the prepared radius");
  }
  TheoremReport out;
  out.theorem = theorem_;
  out.transformed = description_;
  const int n = inputs_.grid;
  if (jensen_side(theorem_)) {
    out.premise = check_jensen(f, *inputs_.alpha_j, n, inputs_.tol);
    if (!out.premise.pass) {
      out.status = TheoremStatus::premise_failed;
      return out;
    }
    out.conclusion = check_upper_hh(f, rho_, lambda_, *conclusion_error_, n, spec_, inputs_.tol);
  } else {
    GrowthBound bound;
    if (inputs_.growth) {
      bound = *inputs_.growth;
    } else {
      double sup = 0.0;
      for (int i = 0; i <= 4096; ++i) sup = std::max(sup, rho_(i / 4096.0));
      bound = GrowthBound{sup, 1.0};
    }
    const GrowthCheck growth = check_growth_condition(rho_, bound);
    out.premise = check_upper_hh(f, rho_, lambda_, *inputs_.alpha_h, n, spec_, inputs_.tol);
    if (!growth.pass) {
      out.premise.pass = false;
      out.premise.check = "growth_condition";
      out.premise.witness = {growth.witness.value_or(0.0)};
      out.premise.witness_names = {"t"};
    }
    if (!out.premise.pass) {
      out.status = TheoremStatus::premise_failed;
      return out;
    }
    out.conclusion = check_jensen(f, *conclusion_error_, n, inputs_.tol);
  }
  out.status = out.conclusion.pass ? TheoremStatus::pass : TheoremStatus::conclusion_failed;
  return out;
}

TheoremReport end_to_end_theorem_check(Theorem theorem, const SegmentFunction& f,
                                       const TheoremInputs& inputs, const QuadratureSpec& spec) {
  return PreparedTheorem(theorem, inputs, f.radius, spec).run(f);
}

}  // namespace hhkit
