#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hhkit/takagi.hpp"
#include "oracles.hpp"

using namespace hhkit;

TEST(DistToIntegers, Examples) {
  EXPECT_DOUBLE_EQ(dist_to_integers(0.25), 0.25);
  EXPECT_DOUBLE_EQ(dist_to_integers(0.75), 0.25);
  EXPECT_DOUBLE_EQ(dist_to_integers(-3.0), 0.0);
}

TEST(DistToIntegers, PeriodicSymmetricBounded) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(-50.0, 50.0);
  for (int i = 0; i < 10000; ++i) {
    // Dyadic samples keep s + 1 exact.
    const double s = std::ldexp(std::round(std::ldexp(dist(rng), 20)), -20);
    const double d = dist_to_integers(s);
    EXPECT_EQ(d, dist_to_integers(s + 1.0));
    EXPECT_EQ(d, dist_to_integers(-s));
    EXPECT_GE(d, 0.0);
    EXPECT_LE(d, 0.5);
  }
}

TEST(Takagi, SpecialPoints) {
  for (double q : {0.5, 1.0, 2.0, 3.0}) {
    TakagiParams p{q, 1e-10};
    EXPECT_EQ(takagi_T(p, 0.0), 0.0);
    EXPECT_EQ(takagi_S(p, 0.0), 0.0);
    EXPECT_DOUBLE_EQ(takagi_T(p, 0.5), 1.0);
    EXPECT_DOUBLE_EQ(takagi_S(p, 0.5), 1.0);
  }
  TakagiParams two{2.0, 1e-10};
  EXPECT_DOUBLE_EQ(takagi_T(two, 0.25), 0.75);
  EXPECT_DOUBLE_EQ(takagi_S(two, 0.25), 0.75);
}

TEST(Takagi, MatchesDirectSummation) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (double q : {0.5, 1.0, 1.7, 2.0, 3.0}) {
    TakagiParams p{q, 1e-10};
    for (int i = 0; i < 200; ++i) {
      const double t = unit(rng);
      EXPECT_NEAR(takagi_T(p, t), oracle::takagi_T_direct(q, t), 2e-10);
      EXPECT_NEAR(takagi_S(p, t), oracle::takagi_S_direct(q, t), 2e-10);
    }
  }
}

TEST(Takagi, TruncationIndexMeetsTailBound) {
  for (double q : {0.5, 1.0, 2.0, 3.0}) {
    for (double tol : {1e-4, 1e-10, 1e-14}) {
      TakagiParams p{q, tol};
      EXPECT_LT(p.tail_bound(TakagiKind::T), tol);
      EXPECT_LT(p.tail_bound(TakagiKind::S), tol);
      // One term fewer would not meet the bound.
      const int n = p.truncation_index(TakagiKind::T);
      EXPECT_GE(std::ldexp(2.0, -(n - 1)), tol);
    }
  }
  EXPECT_THROW((TakagiParams{0.0, 1e-10}.validate()), DomainError);
  EXPECT_THROW((TakagiParams{1.0, 0.0}.validate()), DomainError);
}

TEST(Takagi, SymmetryBoundsAndIdentities) {
  const double tol = 1e-10;
  for (double q : {0.5, 1.0, 1.7, 2.0, 3.0}) {
    TakagiParams p{q, tol};
    const double s_max = std::exp2(q) / (std::exp2(q) - 1.0);
    // Dyadic grid points keep 1 - t exact; for q < 1 the functions are only
    // Hölder-q, so a rounded reflection would move them by ~ulp^q.
    for (int i = 0; i <= 1024; ++i) {
      const double t = i / 1024.0;
      const double T = takagi_T(p, t);
      const double S = takagi_S(p, t);
      EXPECT_NEAR(T, takagi_T(p, 1.0 - t), 2 * tol);
      EXPECT_NEAR(S, takagi_S(p, 1.0 - t), 2 * tol);
      EXPECT_GE(T, 0.0);
      EXPECT_LE(T, 2.0);
      EXPECT_GE(S, 0.0);
      EXPECT_LE(S, s_max);
      if (q == 1.0 || q == 2.0) EXPECT_NEAR(T, S, 2 * tol) << "q=" << q << " t=" << t;
    }
  }
}

TEST(Takagi, MonotoneInExponent) {
  for (int i = 0; i <= 200; ++i) {
    const double t = i / 200.0;
    for (double q : {0.5, 1.0, 2.0}) {
      EXPECT_LE(takagi_T({q + 1.0, 1e-12}, t), takagi_T({q, 1e-12}, t) + 2e-12);
    }
  }
}

TEST(Takagi, UniformWeightIntegrals) {
  const WeightFunction one = WeightFunction::constant(1.0);
  EXPECT_NEAR(takagi_weighted_integral(TakagiKind::T, 1.0, one).value, 1.0, 1e-9);
  EXPECT_NEAR(takagi_weighted_integral(TakagiKind::S, 3.0, one).value, 8.0 / 14.0, 1e-9);
  EXPECT_NEAR(takagi_weighted_integral(TakagiKind::T, 2.0, one).value, 2.0 / 3.0, 1e-9);
}

TEST(Takagi, WeightedIntegralMatchesClosedFormMoments) {
  const WeightFunction rho = WeightFunction::polynomial({0.0, 0.0, 3.0});
  for (double q : {0.5, 1.0, 2.0, 3.0}) {
    EXPECT_NEAR(takagi_weighted_integral(TakagiKind::T, q, rho).value, oracle::takagi_T_cubic_weight(q),
                1e-8)
        << "q=" << q;
    EXPECT_NEAR(takagi_weighted_integral(TakagiKind::S, q, rho).value, oracle::takagi_S_cubic_weight(q),
                1e-8)
        << "q=" << q;
  }
}

TEST(Takagi, LinearWeightHasUniformConstants) {
  // 2t and its mirror 2 - 2t average to 1 and T_q, S_q are symmetric.
  const WeightFunction rho = WeightFunction::polynomial({0.0, 2.0});
  for (double q : {0.5, 2.0}) {
    EXPECT_NEAR(takagi_weighted_integral(TakagiKind::T, q, rho).value, 2.0 / (q + 1.0), 1e-9);
    EXPECT_NEAR(takagi_weighted_integral(TakagiKind::S, q, rho).value,
                std::exp2(q) / (std::exp2(q + 1.0) - 2.0), 1e-9);
  }
}

TEST(Takagi, SymmetricWeightGivesSameIntegralAsItsMirror) {
  const WeightFunction rho = WeightFunction::polynomial({0.0, 2.0});
  const WeightFunction mirror = WeightFunction::polynomial({2.0, -2.0});
  EXPECT_NEAR(takagi_weighted_integral(TakagiKind::T, 1.5, rho).value,
              takagi_weighted_integral(TakagiKind::T, 1.5, mirror).value, 1e-9);
}

TEST(Envelope, PowerAndGeneral) {
  const auto unit = RadialErrorFunction::power(1.0, 1.0);
  EXPECT_DOUBLE_EQ(pointwise_envelope(EnvelopeKind::T_env, unit, 0.5, 1.0), 1.0);
  EXPECT_NEAR(pointwise_envelope(EnvelopeKind::S_env, RadialErrorFunction::power(2.0, 2.0), 0.25, 1.0), 1.5,
              1e-12);
  // The general series with a power profile reproduces a T_q(t) r^q.
  for (double q : {0.5, 1.0, 2.5}) {
    const auto alpha = RadialErrorFunction::power(0.3, q);
    const auto profile = RadialErrorFunction::profile([q](double r) { return 0.3 * std::pow(r, q); },
                                                      {true, true});
    for (double t : {0.1, 0.3, 0.77}) {
      for (double r : {0.5, 2.0}) {
        const double t_env = pointwise_envelope(EnvelopeKind::T_env, alpha, t, r, 1e-10);
        EXPECT_NEAR(pointwise_envelope(EnvelopeKind::general, profile, t, r, 1e-10), t_env, 2e-10);
        // A non-power increasing profile uses the Tabor series for S_env.
        EXPECT_NEAR(pointwise_envelope(EnvelopeKind::S_env, profile, t, r, 1e-12),
                    pointwise_envelope(EnvelopeKind::S_env, alpha, t, r, 1e-12), 1e-10);
      }
    }
  }
}

TEST(Envelope, Errors) {
  const auto unbounded = RadialErrorFunction::profile([](double r) { return r; }, {false, false});
  EXPECT_THROW(pointwise_envelope(EnvelopeKind::general, unbounded, 0.3, 1.0), UnboundedProfileError);
  const auto profile = RadialErrorFunction::profile([](double r) { return r; }, {true, true});
  EXPECT_THROW(pointwise_envelope(EnvelopeKind::T_env, profile, 0.3, 1.0), DomainError);
  EXPECT_THROW(pointwise_envelope(EnvelopeKind::S_env, RadialErrorFunction::constant(0.1), 0.3, 1.0),
               DivergenceError);
}
