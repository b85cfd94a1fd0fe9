#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hhkit/error_function.hpp"
#include "hhkit/quadrature.hpp"
#include "hhkit/takagi.hpp"
#include "hhkit/weight.hpp"
#include "hhkit/weight_kernel.hpp"

namespace hhkit {

enum class Regularity { continuous, lower_semicontinuous, upper_semicontinuous, integrable };

/// g(t) = f(t x + (1 - t) y) on [0, 1] together with r = ‖x - y‖.
/// A subsegment [u, v] of the parameter interval has radius |u - v| r.
struct SegmentFunction {
  ScalarFunction g;
  double radius = 1.0;
  Regularity regularity = Regularity::continuous;
  /// Parameters in (0, 1) where g has a kink or jump; used to split integrals.
  std::vector<double> breakpoints;
  std::string label;

  double operator()(double t) const { return g(t); }
  /// Throws DomainError when g is empty or r <= 0.
  void validate() const;
};

struct CheckReport {
  bool pass = true;
  double max_violation = 0.0;
  /// Parameters of the worst sample: (u, v) for pair checks, (u, v, t) for
  /// pointwise checks, as described by `witness_names`.
  std::vector<double> witness;
  std::vector<std::string> witness_names;
  long long samples_checked = 0;
  /// Declared tolerance plus the propagated quadrature error.
  double tolerance = 0.0;
  std::string check;
};

enum class PerturbBase { quadratic, abs, exp };

/// Convex base plus a seeded trigonometric perturbation h with ‖h‖_∞ <= ε/2,
/// which makes the result Jensen convex up to the constant ε. The Jensen
/// inequality with α_J ≡ ε is verified on a 513-point grid before returning
/// (GeneratorError on failure). In adversarial mode h is rescaled so that
/// its grid maximum equals ε and no verification is done.
SegmentFunction make_perturbed_convex(PerturbBase base, double epsilon, std::uint64_t seed,
                                      bool adversarial = false, double radius = 1.0);

/// Convex base plus a seeded trigonometric perturbation whose concavity is
/// limited by -h'' <= 0.95 · 8 a r^q. For q <= 2 this gives the Jensen
/// inequality with α_J(u) = a‖u‖^q and, for every normalised weight, the
/// upper Hermite–Hadamard inequality with α_H = α_J and λ = ∫tρ. The Jensen
/// premise is verified on a 129-point grid (GeneratorError on failure).
SegmentFunction make_power_premise_function(PerturbBase base, double a, double q,
                                            std::uint64_t seed, double radius = 1.0);

/// Worker threads used by the checkers; 0 picks the hardware concurrency.
void set_lab_threads(unsigned threads);
unsigned lab_threads();

/// g((u+v)/2) <= (g(u) + g(v))/2 + α_J(|u - v| r) for all grid pairs u < v.
CheckReport check_jensen(const SegmentFunction& f, const RadialErrorFunction& alpha_j,
                         int grid_n = 257, double tol = 1e-6);

/// ∫_0^1 g(t u + (1-t) v) ρ(t) dt <= λ g(u) + (1-λ) g(v) + α_H(|u - v| r)
/// for all ordered grid pairs u != v.
CheckReport check_upper_hh(const SegmentFunction& f, const WeightFunction& rho, double lambda,
                           const RadialErrorFunction& alpha_h, int subseg_grid = 257,
                           const QuadratureSpec& spec = {}, double tol = 1e-6);

/// g((u+v)/2) <= ∫_0^1 g(t u + (1-t) v) dt + α_H(|u - v| r) for u < v.
CheckReport check_lower_hh(const SegmentFunction& f, const RadialErrorFunction& alpha_h,
                           int subseg_grid = 257, const QuadratureSpec& spec = {},
                           double tol = 1e-6);

/// ∫_0^1 (g(p((1+s)/2)) + g(p((1-s)/2))) φ(s) ds <= g(u) + g(v) + 2 α_H(|u - v| r)
/// with p(t) = t u + (1-t) v and φ the symmetrised weight, on all pairs
/// u < v including the full segment. The left side equals the sum of the
/// two upper-HH integrals over [u, v] and [v, u], so this residual is the
/// sum of the two ordered upper-HH residuals for any λ.
CheckReport check_symmetrized_hh(const SegmentFunction& f, const WeightFunction& rho,
                                 const RadialErrorFunction& alpha_h, int subseg_grid = 65,
                                 const QuadratureSpec& spec = {}, double tol = 1e-6);

/// g(p(t)) <= t g(u) + (1-t) g(v) + envelope(t, |u - v| r) over all pairs
/// u < v and every grid t.
CheckReport check_pointwise_bound(const SegmentFunction& f, const RadialErrorFunction& alpha_j,
                                  EnvelopeKind kind, int grid = 65, double tail_tol = 1e-10,
                                  double tol = 1e-6);

enum class Theorem { thm1, thm3, thmA2, thmA2plus, thmA1, corA1, corA3, corA3plus };

const char* to_string(Theorem theorem);
/// Throws DomainError for unknown names.
Theorem theorem_from_string(const std::string& name);

struct TheoremInputs {
  /// Jensen-side error term: premise for thm1, thm3, thmA2, thmA2plus,
  /// corA3, corA3plus. Power form required except for thm1 and thm3.
  std::optional<RadialErrorFunction> alpha_j;
  /// Hermite–Hadamard-side power error term: premise for thmA1 and corA1.
  std::optional<RadialErrorFunction> alpha_h;
  WeightFunction rho = WeightFunction::constant(1.0);
  /// λ of the upper-HH premise in thmA1 (defaults to ∫tρ); the Jensen-to-HH
  /// directions always use ∫tρ.
  std::optional<double> lambda;
  /// Growth bound verified on ρ for thmA1; defaults to p = 1 with c the grid
  /// maximum of ρ, i.e. boundedness.
  std::optional<GrowthBound> growth;
  int grid = 65;
  double tol = 1e-5;
  double tail_tol = 1e-10;
};

enum class TheoremStatus { pass, premise_failed, conclusion_failed };

const char* to_string(TheoremStatus status);

struct TheoremReport {
  Theorem theorem = Theorem::thm1;
  TheoremStatus status = TheoremStatus::pass;
  CheckReport premise;
  CheckReport conclusion;
  /// Human-readable description of the transformed error term.
  std::string transformed;
  bool pass() const { return status == TheoremStatus::pass; }
};

/// Transformed error term for one theorem, reusable across test functions
/// with the same radius and grid: the conclusion error is tabulated at every
/// subsegment radius of the grid.
class PreparedTheorem {
 public:
  PreparedTheorem(Theorem theorem, TheoremInputs inputs, double radius,
                  const QuadratureSpec& spec = {});

  Theorem theorem() const { return theorem_; }
  const TheoremInputs& inputs() const { return inputs_; }
  double radius() const { return radius_; }
  const RadialErrorFunction& conclusion_error() const { return *conclusion_error_; }
  const std::string& description() const { return description_; }

  /// Premise check on the grid, then the conclusion check.
  TheoremReport run(const SegmentFunction& f) const;

 private:
  Theorem theorem_;
  TheoremInputs inputs_;
  double radius_;
  QuadratureSpec spec_;
  WeightFunction rho_;
  double lambda_ = 0.5;
  std::optional<RadialErrorFunction> conclusion_error_;
  std::string description_;
};

TheoremReport end_to_end_theorem_check(Theorem theorem, const SegmentFunction& f,
                                       const TheoremInputs& inputs,
                                       const QuadratureSpec& spec = {});

}  // namespace hhkit
