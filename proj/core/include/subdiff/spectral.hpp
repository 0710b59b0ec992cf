#pragma once

#include "subdiff/linalg.hpp"
#include "subdiff/problem.hpp"
#include "subdiff/smoothing.hpp"
#include "subdiff/temporal.hpp"

#include <span>
#include <utility>
#include <vector>

namespace subdiff {

/// z_k(x) = c_k (L_k(xh) - L_{k+2}(xh)), xh = (2/X)(x - X/2),
/// c_k = sqrt(X / (4(2k+3))). Vanishes at 0 and X; (z_i', z_j') = delta_ij.
double basis_z(int k, double x, double x_len);
double basis_z_deriv(int k, double x, double x_len);

/// Fills z[k] = z_k(x) (and dz[k] = z_k'(x) if non-empty) for k < z.size().
void basis_z_all(double x, double x_len, std::span<double> z, std::span<double> dz = {});

/// Mass matrix Z(i, j) = (z_i, z_j) on [0, X], i, j = 0..M'-2, from Legendre
/// orthogonality. Nonzero only for |i - j| in {0, 2}.
Matrix mass_matrix_Z(int m_prime, double x_len);

/// Fourier-like basis zeta_k = sum_i Q(i, k) z_i with Z = Q diag(pi) Q^T, so
/// that (zeta_i, zeta_j) = pi_i delta_ij and (zeta_i', zeta_j') = delta_ij.
class SpectralBasis {
public:
  /// Requires m_prime >= 3.
  SpectralBasis(int m_prime, double x_len);

  int m_prime() const noexcept { return m_prime_; }
  double x_len() const noexcept { return x_len_; }
  /// Number of basis functions, M' - 1.
  std::size_t size() const noexcept { return mass_eigs_.size(); }

  const Matrix& combo_coeffs() const noexcept { return q_; }
  const std::vector<double>& mass_eigs() const noexcept { return mass_eigs_; }

  /// zeta_k(x), zeta_k'(x).
  double zeta(std::size_t k, double x) const;
  double zeta_deriv(std::size_t k, double x) const;

  /// sum_k coeffs[k] zeta_k(x).
  double expand(std::span<const double> coeffs, double x) const;

private:
  int m_prime_;
  double x_len_;
  Matrix q_;
  std::vector<double> mass_eigs_;
};

/// Equivalent to constructing SpectralBasis; named for symmetry with the
/// other back-end.
SpectralBasis build_basis(int m_prime, double x_len);

/// H_hat(i, n) = (h(., tau_n), zeta_i), G_hat(i, n) = (g(., tau_n), zeta_i),
/// by an (M'+16)-point Gauss-Legendre rule on [0, X].
std::pair<Matrix, Matrix> assemble_spectral_rhs(const TransformedFields& fields,
                                                const SpectralBasis& basis,
                                                const TemporalDiscretization& td);

/// Solves (pi_i I + K W) v_i = H_i + W G_i for every basis index i, where
/// v_i, H_i, G_i are rows of the (M'-1) x (N+1) coefficient matrices.
/// A non-empty time_scale d solves in the balanced unknown v_i = diag(d) y_i.
Matrix spectral_mode_solve(const SpectralBasis& basis, const Matrix& coupling_W, double k_gamma,
                           const Matrix& h_hat, const Matrix& g_hat,
                           std::span<const double> time_scale = {});

struct SpectralSolution {
  Matrix coeffs; ///< (M'-1) x (N+1)
  SpectralBasis basis;
  TemporalDiscretization td;
  SmoothingMap map;
};

struct SpectralOptions {
  NodeFamily nodes = NodeFamily::LegendreGauss;
};

/// Throws UnsupportedError unless both boundary functions vanish at the
/// collocation times.
SpectralSolution spectral_solve(const SubdiffusionProblem& problem, int q, int n_time, int m_prime,
                                const SpectralOptions& options = {});

/// u(x, t_n) recovered from the Galerkin expansion at node n.
double eval_spectral(const SpectralSolution& sol, double x, std::size_t n);

/// u on x_grid x t-nodes; t_grid holds lambda(mu(tau_n)).
SolutionField sample_spectral(const SpectralSolution& sol, std::span<const double> x_grid);

} // namespace subdiff
