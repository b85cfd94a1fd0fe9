#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <thread>
#include <vector>

#include "hhkit/quadrature.hpp"
#include "hhkit/special.hpp"
#include "oracles.hpp"

using namespace hhkit;

TEST(Quadrature, ConstantIntegrand) {
  const auto r = integrate([](double) { return 1.0; }, 0.0, 1.0);
  EXPECT_NEAR(r.value, 1.0, 1e-12);
  EXPECT_GE(r.error_estimate, 0.0);
  EXPECT_GT(r.panels_used, 0);
}

TEST(Quadrature, LinearIntegrand) {
  EXPECT_NEAR(integrate([](double t) { return t; }, 0.0, 1.0).value, 0.5, 1e-12);
}

TEST(Quadrature, LogSingularityAtLeftEndpoint) {
  QuadratureSpec spec;
  spec = spec.with_singularity(Singularity::log_left, 0.5);
  const auto r = integrate([](double t) { return std::pow(-std::log(t), -0.5); }, 0.0, 1.0, spec);
  EXPECT_NEAR(r.value, std::sqrt(M_PI), 1e-9);
}

TEST(Quadrature, LogSingularityAtRightAndBothEnds) {
  QuadratureSpec right = QuadratureSpec{}.with_singularity(Singularity::log_right, 2.0);
  // ∫ -ln(1-t) dt = 1
  EXPECT_NEAR(integrate([](double t) { return -std::log1p(-t); }, 0.0, 1.0, right).value, 1.0, 1e-9);
  QuadratureSpec both = QuadratureSpec{}.with_singularity(Singularity::log_both, 2.0);
  // ∫ -ln|1-2t| dt = 1
  EXPECT_NEAR(integrate([](double t) { return -std::log(std::abs(1.0 - 2.0 * t)); }, 0.0, 1.0, both).value,
              1.0, 1e-9);
}

TEST(Quadrature, LogSubstitutedMatchesSimpsonOracle) {
  const auto r = integrate_log_substituted([](double) { return 1.0; }, 2.0);
  const double reference =
      oracle::simpson([](double s) { return s * std::exp(-s); }, 0.0, 60.0, 1L << 20);
  EXPECT_NEAR(r.value, reference, 1e-9);
  EXPECT_NEAR(r.value, 1.0, 1e-9);
}

TEST(Quadrature, LogSubstitutedTrivialCases) {
  EXPECT_NEAR(integrate_log_substituted([](double) { return 1.0; }, 1.0).value, 1.0, 1e-10);
  EXPECT_NEAR(integrate_log_substituted([](double t) { return t; }, 1.0).value, 0.5, 1e-10);
}

TEST(Quadrature, GammaReproduction) {
  for (double p : {0.5, 1.0, 1.5, 2.0, 3.0}) {
    const auto r = integrate_log_substituted([](double) { return 1.0; }, p);
    EXPECT_NEAR(r.value, std::tgamma(p), 1e-8) << "p=" << p;
  }
}

TEST(Quadrature, Linearity) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coef(-10.0, 10.0);
  QuadratureSpec spec;
  auto f = [](double t) { return std::sin(3.0 * t) + t * t; };
  const double base = integrate(f, 0.0, 1.0, spec).value;
  for (int i = 0; i < 20; ++i) {
    const double c = coef(rng);
    const double scaled = integrate([&](double t) { return c * f(t); }, 0.0, 1.0, spec).value;
    EXPECT_NEAR(scaled, c * base, 2.0 * spec.abs_tol);
  }
}

TEST(Quadrature, Additivity) {
  QuadratureSpec spec;
  auto f = [](double t) { return std::exp(-t) * std::cos(5.0 * t); };
  for (double m : {0.1, 0.37, 0.5, 0.9}) {
    const double whole = integrate(f, 0.0, 1.0, spec).value;
    const double parts = integrate(f, 0.0, m, spec).value + integrate(f, m, 1.0, spec).value;
    EXPECT_NEAR(whole, parts, 2.0 * spec.abs_tol);
  }
}

TEST(Quadrature, Breakpoints) {
  const std::vector<double> cuts{0.3};
  const auto r = integrate([](double t) { return t < 0.3 ? 0.0 : 1.0; }, 0.0, 1.0, cuts, QuadratureSpec{});
  EXPECT_NEAR(r.value, 0.7, 1e-12);
}

TEST(Quadrature, EndpointSingular) {
  const auto r = integrate_endpoint_singular([](double t) { return 1.0 / std::sqrt(t); }, 0.0, 1.0, 0.5, 1.0);
  EXPECT_NEAR(r.value, 2.0, 1e-9);
  const auto beta = integrate_endpoint_singular(
      [](double t) { return std::pow(t, -0.7) * std::pow(1.0 - t, -0.4); }, 0.0, 1.0, 0.3, 0.6);
  EXPECT_NEAR(beta.value, beta_function(0.3, 0.6), 1e-8);
}

TEST(Quadrature, ExpWeighted) {
  // ∫ s^{-1/2} e^{-s} ds = Γ(1/2)
  const auto r = integrate_exp_weighted([](double s) { return 1.0 / std::sqrt(s); }, 0.5);
  EXPECT_NEAR(r.value, std::sqrt(M_PI), 1e-9);
}

TEST(Quadrature, Errors) {
  EXPECT_THROW(integrate([](double) { return 1.0; }, 1.0, 0.0), DomainError);
  EXPECT_THROW(integrate([](double) { return 1.0; }, 1.0, 1.0), DomainError);
  QuadratureSpec bad;
  bad.max_panels = 3;
  EXPECT_THROW(integrate([](double) { return 1.0; }, 0.0, 1.0, bad), DomainError);
  bad = QuadratureSpec{};
  bad.abs_tol = 0.0;
  EXPECT_THROW(integrate([](double) { return 1.0; }, 0.0, 1.0, bad), DomainError);
  EXPECT_THROW(integrate_log_substituted([](double) { return 1.0; }, 0.0), DomainError);

  QuadratureSpec tight;
  tight.max_panels = 4;
  tight.abs_tol = 1e-15;
  tight.rel_tol = 0.0;
  try {
    integrate([](double t) { return 1.0 / std::sqrt(std::abs(t - 0.3)); }, 0.0, 1.0, tight);
    FAIL() << "expected budget exhaustion";
  } catch (const BudgetExhaustedError& e) {
    EXPECT_GT(e.partial().value, 0.0);
  }
}

TEST(Quadrature, ConcurrentUseIsConsistent) {
  const double expected = integrate_log_substituted([](double t) { return std::cos(t); }, 1.5).value;
  std::vector<double> results(8);
  std::vector<std::thread> pool;
  for (int i = 0; i < 8; ++i) {
    pool.emplace_back([&, i] {
      results[i] = integrate_log_substituted([](double t) { return std::cos(t); }, 1.5).value;
    });
  }
  for (auto& t : pool) t.join();
  for (double r : results) EXPECT_EQ(r, expected);
}
