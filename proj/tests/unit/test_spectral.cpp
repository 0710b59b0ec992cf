#include "subdiff/error.hpp"
#include "subdiff/experiments.hpp"
#include "subdiff/oracles.hpp"
#include "subdiff/quadrature.hpp"
#include "subdiff/spectral.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace subdiff;

namespace {

// (f, g) on [0, X] with an n-point Gauss-Legendre rule.
template <class F, class G>
double inner(F f, G g, double x_len, int n) {
  const auto& r = gauss_legendre(n);
  double s = 0.0;
  for (std::size_t p = 0; p < r.size(); ++p) {
    const double x = 0.5 * x_len * (r.nodes[p] + 1.0);
    s += r.weights[p] * f(x) * g(x);
  }
  return 0.5 * x_len * s;
}

} // namespace

TEST(BasisZ, BoundaryAndClosedForm) {
  for (double x_len : {1.0, 2.0})
    for (int k = 0; k < 10; ++k) {
      EXPECT_NEAR(basis_z(k, 0.0, x_len), 0.0, 1e-15);
      EXPECT_NEAR(basis_z(k, x_len, x_len), 0.0, 1e-15);
    }
  for (double x : {0.1, 0.5, 0.8})
    EXPECT_NEAR(basis_z(0, x, 1.0), std::sqrt(1.0 / 12.0) * (1.0 - legendre_eval(2, 2.0 * x - 1.0)), 1e-15);
  EXPECT_THROW(basis_z(0, 1.5, 1.0), DomainError);
}

TEST(BasisZ, StiffnessIsIdentity) {
  for (double x_len : {1.0, 2.0})
    for (int i = 0; i <= 8; ++i)
      for (int j = 0; j <= 8; ++j) {
        const double v = inner([&](double x) { return basis_z_deriv(i, x, x_len); },
                               [&](double x) { return basis_z_deriv(j, x, x_len); }, x_len, 32);
        EXPECT_NEAR(v, i == j ? 1.0 : 0.0, 1e-12);
      }
}

TEST(MassMatrix, BandedAndMatchesQuadrature) {
  const Matrix z = mass_matrix_Z(12, 1.0);
  ASSERT_EQ(z.rows(), 11u);
  for (std::size_t i = 0; i < 11; ++i)
    for (std::size_t j = 0; j < 11; ++j) {
      const double q = inner([&](double x) { return basis_z(static_cast<int>(i), x, 1.0); },
                             [&](double x) { return basis_z(static_cast<int>(j), x, 1.0); }, 1.0, 64);
      const std::size_t d = i > j ? i - j : j - i;
      if (d != 0 && d != 2) {
        EXPECT_EQ(z(i, j), 0.0);
        EXPECT_NEAR(q, 0.0, 1e-14);
      } else {
        EXPECT_NEAR(z(i, j), q, 1e-13);
      }
    }
  const auto eig = jacobi_eigen(mass_matrix_Z(40, 1.0));
  for (double v : eig.values) EXPECT_GT(v, 0.0);
  EXPECT_THROW(mass_matrix_Z(2, 1.0), DomainError);
}

TEST(SpectralBasis, MassAndStiffnessDiagonal) {
  for (double x_len : {1.0, 2.0}) {
    const SpectralBasis b(16, x_len);
    ASSERT_EQ(b.size(), 15u);
    for (std::size_t i = 0; i < b.size(); ++i) {
      EXPECT_NEAR(b.zeta(i, 0.0), 0.0, 1e-12);
      EXPECT_NEAR(b.zeta(i, x_len), 0.0, 1e-12);
      for (std::size_t j = 0; j < b.size(); ++j) {
        const double mass = inner([&](double x) { return b.zeta(i, x); }, [&](double x) { return b.zeta(j, x); }, x_len, 24);
        const double stiff = inner([&](double x) { return b.zeta_deriv(i, x); },
                                   [&](double x) { return b.zeta_deriv(j, x); }, x_len, 24);
        EXPECT_NEAR(mass, i == j ? b.mass_eigs()[i] : 0.0, 1e-10);
        EXPECT_NEAR(stiff, i == j ? 1.0 : 0.0, 1e-10);
      }
    }
  }
}

TEST(SpectralBasis, EigenvectorsOrthonormalAndReconstruct) {
  const SpectralBasis b = build_basis(20, 1.0);
  const Matrix& q = b.combo_coeffs();
  const std::size_t n = b.size();
  EXPECT_LE((q.transposed() * q - Matrix::identity(n)).max_abs(), 1e-12);
  Matrix pi(n, n);
  for (std::size_t i = 0; i < n; ++i) pi(i, i) = b.mass_eigs()[i];
  const Matrix z = mass_matrix_Z(20, 1.0);
  EXPECT_LE((q * pi * q.transposed() - z).max_abs(), 1e-12 * z.max_abs());
  EXPECT_THROW(SpectralBasis(2, 1.0), DomainError);
}

TEST(SpectralRhs, ProjectionsOfKnownFields) {
  const SpectralBasis b(12, 1.0);
  const auto td = assemble_W(0.5, SmoothingMap(0.0, 1.0, 2), collocation_nodes(3));
  TransformedFields f;
  f.h = [](double, double) { return 0.0; };
  f.g = [&](double x, double) { return b.zeta(3, x); };
  const auto [h_hat, g_hat] = assemble_spectral_rhs(f, b, td);
  EXPECT_EQ(h_hat.max_abs(), 0.0);
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t n = 0; n < td.size(); ++n)
      EXPECT_NEAR(g_hat(i, n), i == 3 ? b.mass_eigs()[3] : 0.0, 1e-14);
}

TEST(SpectralRhs, StableUnderQuadratureRefinement) {
  const auto [p, mc] = manufactured_case(CaseKind::SinPiX, 2.5, 0.4);
  const SmoothingMap m(0.0, 1.0, 2);
  const SpectralBasis b(16, 1.0);
  const auto td = assemble_W(p, m, collocation_nodes(8));
  const auto f = transform_fields(p, m);
  const auto [h_hat, g_hat] = assemble_spectral_rhs(f, b, td);
  const int fine = 4 * (16 + 16);
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t n = 0; n < td.size(); ++n) {
      const double tau = td.nodes[n];
      const double ref = inner([&](double x) { return f.g(x, tau); }, [&](double x) { return b.zeta(i, x); }, 1.0, fine);
      EXPECT_NEAR(g_hat(i, n), ref, 1e-12);
    }
}

TEST(SpectralModeSolve, AgreesWithKroneckerOracle) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const SpectralBasis b(10, 1.0);
  const auto td = assemble_W(0.35, SmoothingMap(0.0, 1.0, 3), collocation_nodes(5));
  Matrix h(b.size(), td.size()), g(b.size(), td.size());
  for (double& x : h.data()) x = u(rng);
  for (double& x : g.data()) x = u(rng);
  const double k = 0.8;
  Matrix pi(b.size(), b.size());
  for (std::size_t i = 0; i < b.size(); ++i) pi(i, i) = b.mass_eigs()[i];
  const auto ref = oracle::kronecker_solve(pi, (-k) * Matrix::identity(b.size()), td.coupling_W,
                                           h + g * td.coupling_W.transposed());
  for (bool balanced : {false, true}) {
    const Matrix v = balanced ? spectral_mode_solve(b, td.coupling_W, k, h, g, td.jacobians)
                              : spectral_mode_solve(b, td.coupling_W, k, h, g);
    EXPECT_LE((v - ref.v).max_abs(), 1e-11 * ref.v.max_abs());
  }
}

TEST(SpectralSolve, HomogeneousAndUnsupported) {
  SubdiffusionProblem::Data d;
  d.source = [](double, double) { return 0.0; };
  d.initial = [](double) { return 0.0; };
  d.left_bc = [](double) { return 0.0; };
  d.right_bc = [](double) { return 0.0; };
  const auto sol = spectral_solve(SubdiffusionProblem(d), 2, 4, 8);
  EXPECT_EQ(sol.coeffs.max_abs(), 0.0);
  EXPECT_EQ(eval_spectral(sol, 0.4, 2), 0.0);

  const auto [p, mc] = manufactured_case(CaseKind::SinX, 1.9, 0.6);
  EXPECT_THROW(spectral_solve(p, 2, 4, 8), UnsupportedError);
}

TEST(SpectralSolve, MatchesExactSolution) {
  const auto [p, mc] = manufactured_case(CaseKind::SinPiX, 2.5, 0.4);
  const auto sol = spectral_solve(p, 3, 14, 24);
  const std::size_t last = sol.td.size() - 1;
  const double t = sol.map.physical_time(sol.td.nodes[last]);
  EXPECT_NEAR(eval_spectral(sol, 0.5, last), mc.exact(0.5, t), 1e-11);
  EXPECT_NEAR(eval_spectral(sol, 0.0, last), 0.0, 1e-15);
  EXPECT_NEAR(eval_spectral(sol, 1.0, last), 0.0, 1e-13);
  EXPECT_THROW(eval_spectral(sol, 0.5, last + 1), DomainError);
}

// Smooth-in-x data: the spatial error is negligible already at M' = 24.
TEST(SpectralSolve, SpatialResolutionSaturates) {
  const auto [p, mc] = manufactured_case(CaseKind::SinPiX, 2.5, 0.4);
  const double e24 = max_error(spectral_solve(p, 3, 14, 24), mc.exact);
  const double e200 = max_error(spectral_solve(p, 3, 14, 200), mc.exact);
  EXPECT_LT(std::abs(e24 - e200), e200);
  EXPECT_NEAR(e24 / 4.4837731618e-12, 1.0, 1e-3);
}
