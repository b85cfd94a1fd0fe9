#include <gtest/gtest.h>

#include <cmath>

#include "hhkit/weight_kernel.hpp"

using namespace hhkit;

namespace {

// ψ_{N-1}(t) = ½ Σ_{n<N} 4^{-n} Σ_{k<2^n} ρ((t+k)/2^n), summed literally.
double psi_bruteforce(const std::function<double(double)>& rho, int terms, double t) {
  double acc = 0.0;
  for (int n = 0; n < terms; ++n) {
    const long count = 1L << n;
    double inner = 0.0;
    for (long k = 0; k < count; ++k) inner += rho((t + k) / count);
    acc += inner / (static_cast<double>(count) * count);
  }
  return 0.5 * acc;
}

}  // namespace

TEST(Weight, ValidateAndRescale) {
  EXPECT_NO_THROW(validate_weight(WeightFunction::constant(1.0)));
  EXPECT_NO_THROW(validate_weight(WeightFunction::polynomial({0.0, 6.0, -6.0})));
  EXPECT_THROW(validate_weight(WeightFunction::constant(2.0)), DomainError);
  const WeightFunction rescaled = validate_weight(WeightFunction::constant(2.0), {}, true);
  EXPECT_DOUBLE_EQ(rescaled(0.3), 1.0);
  EXPECT_THROW(validate_weight(WeightFunction::constant(0.0), {}, true), NonNormalizableError);
  try {
    validate_weight(WeightFunction::polynomial({2.0, -3.0}));
    FAIL() << "expected a negative-weight error";
  } catch (const NegativeWeightError& e) {
    EXPECT_GT(e.witness(), 2.0 / 3.0);
    EXPECT_LE(e.witness(), 1.0);
  }
  const auto callable = WeightFunction::callable([](double t) { return 3.0 * t * t; });
  EXPECT_NEAR(validate_weight(callable)(0.5), 0.75, 1e-15);
}

TEST(Weight, Lambda) {
  EXPECT_DOUBLE_EQ(lambda_of(WeightFunction::constant(1.0)), 0.5);
  EXPECT_NEAR(lambda_of(WeightFunction::polynomial({0.0, 2.0})), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(lambda_of(WeightFunction::polynomial({0.0, 6.0, -6.0})), 0.5, 1e-15);
  EXPECT_NEAR(lambda_of(WeightFunction::piecewise_linear({0.0, 1.0}, {0.0, 2.0})), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(lambda_of(WeightFunction::piecewise_linear({0.0, 0.5, 1.0}, {0.0, 2.0, 0.0})), 0.5, 1e-15);
  EXPECT_NEAR(lambda_of(WeightFunction::callable([](double t) { return 2.0 * t; })), 2.0 / 3.0, 1e-12);
}

TEST(PsiKernel, UniformWeight) {
  const PsiKernel psi = build_psi(WeightFunction::constant(1.0), 30);
  EXPECT_NEAR(psi(0.0), 1.0, 1e-8);
  EXPECT_NEAR(psi(0.7), 1.0, 1e-8);
  EXPECT_DOUBLE_EQ(psi.l1_tail_bound(), std::ldexp(1.0, -30));
}

TEST(PsiKernel, LinearWeightClosedForm) {
  // For ρ = 2t the series sums to ψ(t) = 1/3 + 4t/3.
  const PsiKernel psi = build_psi(WeightFunction::polynomial({0.0, 2.0}), 30);
  for (double t : {0.0, 0.25, 0.5, 0.8, 1.0}) {
    EXPECT_NEAR(psi(t), 1.0 / 3.0 + 4.0 * t / 3.0, 1e-8) << "t=" << t;
  }
}

TEST(PsiKernel, MatchesBruteForcePartialSums) {
  auto rho = [](double t) { return 6.0 * t * (1.0 - t); };
  const PsiKernel psi = build_psi(WeightFunction::polynomial({0.0, 6.0, -6.0}), 10);
  for (double t : {0.0, 0.1, 0.5, 0.9}) {
    EXPECT_NEAR(psi(t), psi_bruteforce(rho, 10, t), 1e-13);
  }
}

TEST(PsiKernel, FunctionalEquationAndIdentities) {
  for (const auto& rho : {WeightFunction::constant(1.0), WeightFunction::polynomial({0.0, 2.0}),
                          WeightFunction::polynomial({0.0, 6.0, -6.0})}) {
    const PsiKernel psi = build_psi(rho, 30);
    const PsiResidual res = check_psi_equation(psi, 257, 1e-7);
    EXPECT_TRUE(res.pass) << res.max_residual;
    EXPECT_FALSE(res.l1_mode);
    const PsiIntegrals ids = psi_lambda_identities(psi);
    const double lambda = lambda_of(rho);
    EXPECT_NEAR(ids.total, 1.0, 1e-7);
    EXPECT_NEAR(ids.upper_half, lambda, 1e-7);
    EXPECT_NEAR(ids.lower_half, 1.0 - lambda, 1e-7);
  }
}

TEST(PsiKernel, ResidualHalvesWithEachTerm) {
  const WeightFunction rho = WeightFunction::polynomial({0.0, 2.0});
  const double r10 = check_psi_equation(build_psi(rho, 10), 65, 1.0).max_residual;
  const double r11 = check_psi_equation(build_psi(rho, 11), 65, 1.0).max_residual;
  EXPECT_NEAR(r11 / r10, 0.5, 0.05);
}

TEST(PsiKernel, DiscontinuousWeightUsesIntegratedResidual) {
  const auto step = WeightFunction::callable([](double t) { return t < 0.5 ? 0.0 : 2.0; }, false, {0.5});
  const PsiResidual res = check_psi_equation(build_psi(step, 20), 65, 1e-5);
  EXPECT_TRUE(res.l1_mode);
  EXPECT_TRUE(res.pass) << res.max_residual;
}

TEST(PsiKernel, RejectsBadTermCount) {
  EXPECT_THROW(build_psi(WeightFunction::constant(1.0), 0), DomainError);
}

TEST(SymmetrizePhi, LinearWeightIsConstant) {
  const PhiFunction phi = symmetrize_phi(WeightFunction::polynomial({0.0, 2.0}));
  for (double s : {0.01, 0.3, 0.99}) EXPECT_NEAR(phi(s), 1.0, 1e-15);
  EXPECT_NEAR(phi.integral(), 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(phi.class_index(), 1.0);
  EXPECT_NEAR(phi.norm_bound(), 1.0, 1e-12);
}

TEST(SymmetrizePhi, UsesGrowthBound) {
  const PhiFunction phi = symmetrize_phi(WeightFunction::polynomial({0.0, 6.0, -6.0}), GrowthBound{1.5, 1.0});
  EXPECT_DOUBLE_EQ(phi.norm_bound(), 1.5);
  // φ(s) = 1.5 (1 - s²)
  EXPECT_NEAR(phi(0.5), 1.125, 1e-15);
}

TEST(GrowthCondition, DetectsViolation) {
  const auto log_weight =
      WeightFunction::callable([](double t) { return -std::log(std::abs(1.0 - 2.0 * t)); }, true, {0.5});
  EXPECT_TRUE(check_growth_condition(log_weight, {1.0, 2.0}).pass);
  const GrowthCheck bad = check_growth_condition(log_weight, {1.0, 1.0});
  EXPECT_FALSE(bad.pass);
  ASSERT_TRUE(bad.witness.has_value());
  EXPECT_GT(-std::log(std::abs(1.0 - 2.0 * *bad.witness)), 1.0);
  EXPECT_TRUE(check_growth_condition(WeightFunction::polynomial({0.0, 2.0}), {2.0, 1.0}).pass);
  EXPECT_FALSE(check_growth_condition(WeightFunction::polynomial({0.0, 2.0}), {1.5, 1.0}).pass);
}

TEST(PhiNorm, Estimates) {
  const auto one = phi_norm(PhiFunction::constant(1.0), 1.0);
  EXPECT_NEAR(one.estimate, 1.0, 1e-15);
  EXPECT_TRUE(one.bounded);
  const auto minus_log = phi_norm([](double t) { return -std::log(t); }, 2.0);
  EXPECT_NEAR(minus_log.estimate, 1.0, 1e-12);
  EXPECT_TRUE(minus_log.bounded);
  const auto bad = phi_norm(PhiFunction::constant(1.0), 2.0);
  EXPECT_FALSE(bad.bounded);
  const auto also_bad = phi_norm(PhiFunction::constant(1.0), 0.5);
  EXPECT_FALSE(also_bad.bounded);
}
