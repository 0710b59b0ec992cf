#include "subdiff/spectral.hpp"

#include "subdiff/error.hpp"
#include "subdiff/quadrature.hpp"

#include <cmath>
#include <string>

namespace subdiff {

namespace {

double z_coeff(int k, double x_len) { return std::sqrt(x_len / (4.0 * (2.0 * k + 3.0))); }

double to_reference(double x, double x_len) { return (2.0 / x_len) * (x - 0.5 * x_len); }

void check_x(double x, double x_len) {
  if (x < 0.0 || x > x_len) throw DomainError("spectral basis: x outside [0, X]");
}

} // namespace

double basis_z(int k, double x, double x_len) {
  if (k < 0) throw DomainError("basis_z: negative index");
  check_x(x, x_len);
  const double xh = to_reference(x, x_len);
  return z_coeff(k, x_len) * (legendre_eval(k, xh) - legendre_eval(k + 2, xh));
}

double basis_z_deriv(int k, double x, double x_len) {
  if (k < 0) throw DomainError("basis_z_deriv: negative index");
  check_x(x, x_len);
  const double xh = to_reference(x, x_len);
  // L_k' - L_{k+2}' = -(2k+3) L_{k+1}
  return -z_coeff(k, x_len) * (2.0 / x_len) * (2.0 * k + 3.0) * legendre_eval(k + 1, xh);
}

void basis_z_all(double x, double x_len, std::span<double> z, std::span<double> dz) {
  check_x(x, x_len);
  const std::size_t n = z.size();
  std::vector<double> leg(n + 2);
  legendre_all(to_reference(x, x_len), leg);
  for (std::size_t k = 0; k < n; ++k) {
    const double ck = z_coeff(static_cast<int>(k), x_len);
    z[k] = ck * (leg[k] - leg[k + 2]);
    if (!dz.empty()) dz[k] = -ck * (2.0 / x_len) * (2.0 * k + 3.0) * leg[k + 1];
  }
}

Matrix mass_matrix_Z(int m_prime, double x_len) {
  if (m_prime < 3) throw DomainError("mass_matrix_Z: M' must be at least 3");
  if (!(x_len > 0.0)) throw DomainError("mass_matrix_Z: X must be positive");
  const std::size_t n = static_cast<std::size_t>(m_prime - 1);
  // (L_j, L_j) = 2/(2j+1) on [-1, 1]; dx = (X/2) dxh.
  auto leg_norm = [](std::size_t j) { return 2.0 / (2.0 * j + 1.0); };
  Matrix z(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const double ci = z_coeff(static_cast<int>(i), x_len);
    z(i, i) = 0.5 * x_len * ci * ci * (leg_norm(i) + leg_norm(i + 2));
    if (i + 2 < n) {
      const double v = -0.5 * x_len * ci * z_coeff(static_cast<int>(i + 2), x_len) * leg_norm(i + 2);
      z(i, i + 2) = v;
      z(i + 2, i) = v;
    }
  }
  return z;
}

SpectralBasis::SpectralBasis(int m_prime, double x_len) : m_prime_(m_prime), x_len_(x_len) {
  const Matrix z = mass_matrix_Z(m_prime, x_len);
  SymmetricEigen eig = jacobi_eigen(z, 1e-13, 30);
  q_ = std::move(eig.vectors);
  mass_eigs_ = std::move(eig.values);
  for (double p : mass_eigs_)
    if (!(p > 0.0)) throw NumericalError("SpectralBasis: mass matrix is not positive definite");
}

double SpectralBasis::zeta(std::size_t k, double x) const {
  std::vector<double> z(size());
  basis_z_all(x, x_len_, z);
  double s = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) s += q_(i, k) * z[i];
  return s;
}

double SpectralBasis::zeta_deriv(std::size_t k, double x) const {
  std::vector<double> z(size()), dz(size());
  basis_z_all(x, x_len_, z, dz);
  double s = 0.0;
  for (std::size_t i = 0; i < dz.size(); ++i) s += q_(i, k) * dz[i];
  return s;
}

double SpectralBasis::expand(std::span<const double> coeffs, double x) const {
  if (coeffs.size() != size()) throw DomainError("SpectralBasis::expand: wrong coefficient count");
  std::vector<double> z(size());
  basis_z_all(x, x_len_, z);
  double s = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    double ci = 0.0;
    for (std::size_t k = 0; k < coeffs.size(); ++k) ci += q_(i, k) * coeffs[k];
    s += ci * z[i];
  }
  return s;
}

SpectralBasis build_basis(int m_prime, double x_len) { return SpectralBasis(m_prime, x_len); }

std::pair<Matrix, Matrix> assemble_spectral_rhs(const TransformedFields& fields,
                                                const SpectralBasis& basis,
                                                const TemporalDiscretization& td) {
  const std::size_t nb = basis.size();
  const std::size_t nt = td.size();
  const double x_len = basis.x_len();
  const QuadratureRule& rule = gauss_legendre(basis.m_prime() + 16);

  // Moments against the z_i first, then rotate into the zeta basis.
  Matrix hz(nb, nt), gz(nb, nt);
  std::vector<double> z(nb);
  for (std::size_t m = 0; m < rule.size(); ++m) {
    const double x = 0.5 * x_len * (rule.nodes[m] + 1.0);
    const double w = 0.5 * x_len * rule.weights[m];
    basis_z_all(x, x_len, z);
    for (std::size_t n = 0; n < nt; ++n) {
      const double hv = w * fields.h(x, td.nodes[n]);
      const double gv = w * fields.g(x, td.nodes[n]);
      for (std::size_t i = 0; i < nb; ++i) {
        hz(i, n) += hv * z[i];
        gz(i, n) += gv * z[i];
      }
    }
  }
  const Matrix qt = basis.combo_coeffs().transposed();
  return {qt * hz, qt * gz};
}

Matrix spectral_mode_solve(const SpectralBasis& basis, const Matrix& coupling_W, double k_gamma,
                           const Matrix& h_hat, const Matrix& g_hat,
                           std::span<const double> time_scale) {
  const std::size_t nb = basis.size();
  const std::size_t nt = coupling_W.rows();
  if (h_hat.rows() != nb || g_hat.rows() != nb || h_hat.cols() != nt || g_hat.cols() != nt)
    throw DomainError("spectral_mode_solve: right-hand side has wrong shape");
  if (!time_scale.empty() && time_scale.size() != nt)
    throw DomainError("spectral_mode_solve: time scale has wrong length");

  std::vector<double> d(nt, 1.0);
  if (!time_scale.empty()) d.assign(time_scale.begin(), time_scale.end());
  Matrix wb = coupling_W;
  for (std::size_t n = 0; n < nt; ++n)
    for (std::size_t j = 0; j < nt; ++j) wb(n, j) *= d[j] / d[n];

  const Matrix wg = g_hat * coupling_W.transposed(); // row i: (W G_i)^T
  Matrix coeffs(nb, nt);
  for (std::size_t i = 0; i < nb; ++i) {
    Matrix mode = k_gamma * wb;
    for (std::size_t j = 0; j < nt; ++j) mode(j, j) += basis.mass_eigs()[i];
    const LuFactorization lu(std::move(mode));
    if (lu.rcond() < 1e-14)
      throw NumericalError("spectral_mode_solve: mode " + std::to_string(i) + " is numerically singular");
    auto row = coeffs.row(i);
    for (std::size_t n = 0; n < nt; ++n) row[n] = (h_hat(i, n) + wg(i, n)) / d[n];
    lu.solve_in_place(row);
    for (std::size_t n = 0; n < nt; ++n) row[n] *= d[n];
  }
  return coeffs;
}

SpectralSolution spectral_solve(const SubdiffusionProblem& problem, int q, int n_time, int m_prime,
                                const SpectralOptions& options) {
  const SmoothingMap map(0.0, problem.t_len(), q);
  const auto nodes = collocation_nodes(n_time, options.nodes);
  for (double tau : nodes) {
    const double t = map.physical_time(tau);
    if (problem.left_bc(t) != 0.0 || problem.right_bc(t) != 0.0)
      throw UnsupportedError("spectral_solve: only homogeneous boundary conditions are supported");
  }
  TemporalDiscretization td = assemble_W(problem, map, nodes);
  SpectralBasis basis(m_prime, problem.x_len());
  const TransformedFields fields = transform_fields(problem, map);
  const auto [h_hat, g_hat] = assemble_spectral_rhs(fields, basis, td);
  Matrix coeffs = spectral_mode_solve(basis, td.coupling_W, problem.k_gamma(), h_hat, g_hat, td.jacobians);
  return SpectralSolution{std::move(coeffs), std::move(basis), std::move(td), map};
}

double eval_spectral(const SpectralSolution& sol, double x, std::size_t n) {
  if (n >= sol.td.size()) throw DomainError("eval_spectral: time index out of range");
  std::vector<double> col(sol.coeffs.rows());
  for (std::size_t i = 0; i < col.size(); ++i) col[i] = sol.coeffs(i, n);
  const double v = sol.basis.expand(col, x);
  return recover_u(v, sol.map, sol.td.nodes[n]);
}

SolutionField sample_spectral(const SpectralSolution& sol, std::span<const double> x_grid) {
  const std::size_t nb = sol.basis.size();
  const std::size_t nt = sol.td.size();
  // Coefficients in the z basis: C = Q * coeffs.
  const Matrix zc = sol.basis.combo_coeffs() * sol.coeffs;

  SolutionField out;
  out.x_grid.assign(x_grid.begin(), x_grid.end());
  out.t_grid.resize(nt);
  for (std::size_t n = 0; n < nt; ++n) out.t_grid[n] = sol.map.physical_time(sol.td.nodes[n]);
  out.values = Matrix(x_grid.size(), nt);
  std::vector<double> z(nb);
  for (std::size_t k = 0; k < x_grid.size(); ++k) {
    basis_z_all(x_grid[k], sol.basis.x_len(), z);
    for (std::size_t n = 0; n < nt; ++n) {
      double v = 0.0;
      for (std::size_t i = 0; i < nb; ++i) v += zc(i, n) * z[i];
      out.values(k, n) = recover_u(v, sol.map, sol.td.nodes[n]);
    }
  }
  return out;
}

} // namespace subdiff
