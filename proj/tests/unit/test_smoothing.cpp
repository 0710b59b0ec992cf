#include "subdiff/error.hpp"
#include "subdiff/problem.hpp"
#include "subdiff/smoothing.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace subdiff;

TEST(SmoothingMap, LambdaClosedForms) {
  const SmoothingMap id(-1.0, 3.0, 1);
  for (double t : {-1.0, 0.0, 2.5}) {
    EXPECT_DOUBLE_EQ(id.lambda(t), t);
    EXPECT_DOUBLE_EQ(id.lambda_deriv(t), 1.0);
  }
  const SmoothingMap sq(0.0, 1.0, 2);
  EXPECT_DOUBLE_EQ(sq.lambda(0.5), 0.25);
  EXPECT_DOUBLE_EQ(sq.lambda_deriv(0.5), 1.0);
  const SmoothingMap cube(0.0, 0.4, 3);
  EXPECT_NEAR(cube.lambda(0.4), 0.4, 1e-16);
  EXPECT_EQ(cube.lambda(0.0), 0.0);
  EXPECT_EQ(cube.lambda_deriv(0.0), 0.0);

  EXPECT_THROW(sq.lambda(1.1), DomainError);
  EXPECT_THROW(sq.lambda_deriv(-0.1), DomainError);
  EXPECT_THROW(SmoothingMap(0.0, 1.0, 0), DomainError);
  EXPECT_THROW(SmoothingMap(0.0, 1.0, 7), DomainError);
  EXPECT_THROW(SmoothingMap(1.0, 1.0, 2), DomainError);
}

TEST(SmoothingMap, MuEndpoints) {
  EXPECT_DOUBLE_EQ(SmoothingMap(0.0, 1.0, 1).mu(0.0), 0.5);
  EXPECT_DOUBLE_EQ(SmoothingMap(0.0, 2.0, 1).mu(1.0), 2.0);
  EXPECT_EQ(SmoothingMap(0.0, 0.4, 2).mu(-1.0), 0.0);
  EXPECT_EQ(SmoothingMap(0.0, 0.4, 2).mu(1.0), 0.4);
  EXPECT_THROW(SmoothingMap(0.0, 1.0, 1).mu(1.0001), DomainError);
}

TEST(SmoothingMap, LambdaIsIncreasingBijection) {
  for (int q = 1; q <= 6; ++q) {
    const SmoothingMap m(0.0, 0.4, q);
    EXPECT_NEAR(m.physical_time(1.0), 0.4, 1e-16);
    EXPECT_EQ(m.physical_time(-1.0), 0.0);
    double prev = -1.0;
    for (int i = 0; i <= 100; ++i) {
      const double t = m.physical_time(-1.0 + 0.02 * i);
      EXPECT_GT(t, prev);
      prev = t;
    }
  }
}

TEST(KernelEvaluator, DeltaAlphaValues) {
  const KernelEvaluator k1(SmoothingMap(0.0, 1.0, 1), 0.7);
  EXPECT_DOUBLE_EQ(k1.delta_alpha(0.8, 0.2), 1.0);
  EXPECT_DOUBLE_EQ(k1.delta_alpha(0.3, 0.3), 1.0);

  const KernelEvaluator k2(SmoothingMap(0.0, 1.0, 2), 0.5);
  EXPECT_NEAR(k2.delta_alpha(1.0, 0.5), 0.816496580927726, 1e-15);

  const KernelEvaluator k3(SmoothingMap(0.0, 1.0, 3), 0.3);
  EXPECT_NEAR(k3.delta_alpha(0.2, 0.2), 1.889059452187042, 1e-14);
  EXPECT_NEAR(k3.delta_alpha(0.2, 0.2 - 1e-9), k3.delta_alpha(0.2, 0.2), 1e-8);

  EXPECT_THROW(k2.delta_alpha(0.4, 0.5), DomainError);
  EXPECT_THROW(k2.delta_alpha(0.0, 0.0), DomainError);
  EXPECT_NO_THROW(k1.delta_alpha(0.0, 0.0));
  // The symmetric branch accepts s > t and is symmetric.
  EXPECT_DOUBLE_EQ(k2.delta_alpha(0.4, 0.5, KernelBranch::Symmetric), k2.delta_alpha(0.5, 0.4));
}

TEST(KernelEvaluator, DiagonalContinuity) {
  for (int q = 1; q <= 3; ++q) {
    const KernelEvaluator k(SmoothingMap(0.0, 1.0, q), 0.6);
    for (double t : {0.1, 0.5, 1.0}) {
      const double diag = k.delta_alpha(t, t);
      EXPECT_NEAR(k.delta_alpha(t, t - 1e-6), diag, 1e-4 * diag);
    }
  }
}

TEST(KernelEvaluator, KernelH) {
  for (double alpha : {0.1, 0.5, 0.9}) {
    const KernelEvaluator id(SmoothingMap(-1.0, 1.0, 1), alpha);
    EXPECT_NEAR(id.kernel_H(0.3, -0.6), 1.0, 1e-15);
  }
  const KernelEvaluator k(SmoothingMap(0.0, 1.0, 2), 0.4);
  EXPECT_NEAR(k.kernel_H(0.5, 0.0), 0.905126450481774463, 1e-15);

  for (int q = 1; q <= 3; ++q)
    for (double alpha : {0.1, 0.5, 0.9}) {
      const KernelEvaluator kq(SmoothingMap(0.0, 1.0, q), alpha);
      for (double tau : {-0.999, -0.5, 0.0, 1.0}) EXPECT_GT(kq.kernel_H(tau, tau), 0.0);
    }
}

// (b-a)/2 (lambda(mu(t)) - lambda(mu(s)))^{-alpha}
//   = H(t, s) (t - s)^{-alpha} / lambda'(mu(t))
// The (b-a)/2 is the Jacobian of mu carried by H.
TEST(KernelEvaluator, KernelConsistencyIdentity) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int q = 1; q <= 3; ++q) {
    const SmoothingMap m(0.0, 0.4, q);
    const double alpha = 0.35;
    const KernelEvaluator k(m, alpha);
    for (int i = 0; i < 50; ++i) {
      double t = u(rng), s = u(rng);
      if (s > t) std::swap(s, t);
      if (t - s < 1e-3) continue;
      const double lhs = 0.2 * std::pow(m.physical_time(t) - m.physical_time(s), -alpha);
      const double rhs = k.kernel_H(t, s) * std::pow(t - s, -alpha) / m.jacobian(t);
      EXPECT_NEAR(lhs / rhs, 1.0, 1e-10);
    }
  }
}

TEST(TransformFields, DefinitionsHold) {
  const auto [p, mc] = manufactured_case(CaseKind::SinX, 1.9, 0.6);
  const SmoothingMap m2(0.0, 1.0, 2);
  const auto f2 = transform_fields(p, m2);
  for (double x : {0.0, 0.3, 1.0}) EXPECT_EQ(f2.h(x, -1.0), 0.0);
  ASSERT_TRUE(f2.v_exact.has_value());
  EXPECT_NEAR((*f2.v_exact)(1.0, 1.0), 2.0 * std::sin(1.0), 1e-15);
  EXPECT_NEAR(f2.g(0.4, 0.2), m2.jacobian(0.2) * p.source(0.4, m2.physical_time(0.2)), 1e-15);

  const SmoothingMap m1(0.0, 1.0, 1);
  const auto f1 = transform_fields(p, m1);
  for (double tau : {-0.7, 0.1, 0.9}) EXPECT_NEAR(f1.g(0.6, tau), p.source(0.6, m1.mu(tau)), 1e-15);

  EXPECT_THROW(transform_fields(p, SmoothingMap(0.0, 2.0, 2)), DomainError);
  EXPECT_FALSE(transform_fields(example3_problem(0.5), SmoothingMap(0.0, 0.4, 2)).v_exact.has_value());
}

TEST(RecoverU, RoundTripAndGuard) {
  const SmoothingMap m1(0.0, 1.0, 1);
  EXPECT_EQ(recover_u(0.37, m1, -0.2), 0.37);
  const SmoothingMap m2(0.0, 1.0, 2);
  EXPECT_EQ(recover_u(0.0, m2, 0.1), 0.0);
  EXPECT_DOUBLE_EQ(recover_u(3.0, m2, 1.0), 1.5);
  EXPECT_THROW(recover_u(1.0, m2, -1.0), DomainError);

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-0.999, 1.0), w(-5.0, 5.0);
  const SmoothingMap m3(0.0, 0.4, 3);
  for (int i = 0; i < 100; ++i) {
    const double tau = u(rng), val = w(rng);
    EXPECT_NEAR(recover_u(m3.jacobian(tau) * val, m3, tau), val, 1e-13 * std::abs(val));
  }
}
