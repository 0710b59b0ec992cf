#include "subdiff/error.hpp"
#include "subdiff/oracles.hpp"
#include "subdiff/quadrature.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <thread>

using namespace subdiff;

TEST(GammaFn, KnownValues) {
  EXPECT_DOUBLE_EQ(gamma_fn(1.0), 1.0);
  EXPECT_NEAR(gamma_fn(5.0), 24.0, 1e-12);
  EXPECT_NEAR(gamma_fn(0.5), 1.772453850905516, 1e-14);
  // 50-digit reference: 1.81866732179545996839203309060358577681341214317...
  EXPECT_NEAR(gamma_fn(3.5) / gamma_fn(2.9), 1.8186673217954599684, 1e-13);
  EXPECT_THROW(gamma_fn(0.0), DomainError);
  EXPECT_THROW(gamma_fn(-1.5), DomainError);
}

TEST(GammaFn, RecurrenceOnGrid) {
  for (int i = 1; i <= 50; ++i) {
    const double x = 0.1 * i;
    EXPECT_NEAR(gamma_fn(x + 1.0) / (x * gamma_fn(x)), 1.0, 1e-12) << x;
  }
}

TEST(GaussLegendre, SmallRules) {
  const auto& r1 = gauss_legendre(1);
  ASSERT_EQ(r1.size(), 1u);
  EXPECT_EQ(r1.nodes[0], 0.0);
  EXPECT_NEAR(r1.weights[0], 2.0, 1e-15);

  const auto& r2 = gauss_legendre(2);
  EXPECT_NEAR(r2.nodes[0], -1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(r2.nodes[1], 1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(r2.weights[0], 1.0, 1e-15);
  EXPECT_NEAR(r2.weights[1], 1.0, 1e-15);
}

TEST(GaussLegendre, ExactnessAndSymmetry) {
  const auto& r = gauss_legendre(10);
  EXPECT_NEAR(r.apply([](double x) { return std::pow(x, 18); }), 2.0 / 19.0, 1e-13);
  for (int n : {3, 16, 64, 257}) {
    const auto& g = gauss_legendre(n);
    for (std::size_t i = 0; i < g.size(); ++i) {
      EXPECT_NEAR(g.nodes[i], -g.nodes[g.size() - 1 - i], 1e-14);
      EXPECT_GT(g.weights[i], 0.0);
      if (i > 0) EXPECT_LT(g.nodes[i - 1], g.nodes[i]);
    }
    EXPECT_GT(g.nodes.front(), -1.0);
    EXPECT_LT(g.nodes.back(), 1.0);
  }
  EXPECT_THROW(gauss_legendre(0), DomainError);
  EXPECT_THROW(gauss_legendre(2049), DomainError);
}

TEST(GaussJacobi, ReducesToLegendre) {
  const auto& j = gauss_jacobi(12, 0.0, 0.0);
  const auto& l = gauss_legendre(12);
  for (std::size_t i = 0; i < 12; ++i) {
    EXPECT_NEAR(j.nodes[i], l.nodes[i], 1e-13);
    EXPECT_NEAR(j.weights[i], l.weights[i], 1e-13);
  }
}

TEST(GaussJacobi, WeightSumIsMoment) {
  const auto& r = gauss_jacobi(7, -0.4, 0.0);
  double sum = 0.0;
  for (double w : r.weights) sum += w;
  EXPECT_NEAR(sum / (std::pow(2.0, 0.6) / 0.6), 1.0, 1e-12);

  for (double a : {-0.9, -0.3, 0.5, 2.0})
    for (double b : {-0.5, 0.0, 1.0}) {
      const auto& g = gauss_jacobi(9, a, b);
      double s = 0.0;
      for (double w : g.weights) s += w;
      const double mu0 = std::pow(2.0, a + b + 1.0) * beta_fn(a + 1.0, b + 1.0);
      EXPECT_NEAR(s / mu0, 1.0, 1e-12) << a << ' ' << b;
    }
  EXPECT_THROW(gauss_jacobi(4, -1.0, 0.0), DomainError);
  EXPECT_THROW(gauss_jacobi(4, 0.0, -1.2), DomainError);
}

TEST(GaussJacobi, SingularMomentAgainstOracle) {
  // int_{-1}^{1} (1-x)^{-1/2} x^4 dx; 50-digit value 0.96076730904076933474...
  const auto& r = gauss_jacobi(5, -0.5, 0.0);
  const double rule = r.apply([](double x) { return std::pow(x, 4); });
  EXPECT_NEAR(rule, 0.96076730904076933474, 1e-14);

  oracle::SingularIntegralSpec spec;
  spec.integrand = [](double x) { return std::pow(x, 4); };
  spec.singular_exponent = 0.5;
  EXPECT_NEAR(rule, oracle::singular_integral(spec).value, 1e-12);
}

TEST(GaussJacobi, RandomPolynomialsAgainstOracle) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> pa(0.05, 0.95);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 8;
    const double alpha = pa(rng);
    std::vector<double> c(2 * n);
    for (double& x : c) x = u(rng);
    auto p = [&](double x) {
      double s = 0.0;
      for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * x + *it;
      return s;
    };
    const double rule = gauss_jacobi(n, -alpha, 0.0).apply(p);
    oracle::SingularIntegralSpec spec;
    spec.integrand = p;
    spec.singular_exponent = alpha;
    const double ref = oracle::singular_integral(spec).value;
    EXPECT_NEAR(rule, ref, 1e-11 * std::max(1.0, std::abs(ref))) << trial;
  }
}

TEST(GaussJacobi, CacheIsSafeUnderConcurrentAccess) {
  std::vector<std::thread> pool;
  std::vector<const QuadratureRule*> seen(8);
  for (int t = 0; t < 8; ++t)
    pool.emplace_back([&, t] { seen[t] = &gauss_jacobi(33, -0.37, 0.0); });
  for (auto& th : pool) th.join();
  for (auto* p : seen) EXPECT_EQ(p, seen[0]);
}

TEST(Legendre, Values) {
  EXPECT_EQ(legendre_eval(0, 0.3), 1.0);
  EXPECT_EQ(legendre_eval(1, 0.3), 0.3);
  EXPECT_NEAR(legendre_eval(2, 0.5), -0.125, 1e-16);
  EXPECT_NEAR(legendre_eval(7, 1.0), 1.0, 1e-15);
  EXPECT_NEAR(legendre_eval(7, -1.0), -1.0, 1e-15);

  const auto& g = gauss_legendre(16);
  EXPECT_NEAR(g.apply([](double x) { return legendre_eval(6, x) * legendre_eval(6, x); }), 2.0 / 13.0, 1e-13);
  EXPECT_NEAR(g.apply([](double x) { return legendre_eval(6, x) * legendre_eval(5, x); }), 0.0, 1e-14);
}

TEST(Legendre, DerivativeMatchesDifferenceQuotient) {
  for (int k : {1, 2, 5, 12})
    for (double x : {-0.9, -0.2, 0.4, 0.75}) {
      const double h = 1e-6;
      const double fd = (legendre_eval(k, x + h) - legendre_eval(k, x - h)) / (2 * h);
      EXPECT_NEAR(legendre_deriv(k, x), fd, 1e-7 * std::max(1.0, std::abs(fd)));
    }
  // L_k'(1) = k(k+1)/2
  EXPECT_NEAR(legendre_deriv(9, 1.0), 45.0, 1e-12);
  std::vector<double> all(10);
  legendre_all(0.37, all);
  for (int k = 0; k < 10; ++k) EXPECT_NEAR(all[k], legendre_eval(k, 0.37), 1e-15);
}
