#include "subdiff/compact.hpp"

#include "subdiff/error.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace subdiff {

double average_apply(std::span<const double> u, std::size_t k) {
  if (u.empty() || k >= u.size()) throw DomainError("average_apply: index out of range");
  if (k == 0 || k + 1 == u.size()) return u[k];
  return u[k] + (u[k - 1] - 2.0 * u[k] + u[k + 1]) / 12.0;
}

Matrix TridiagonalToeplitz::dense() const {
  Matrix d(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    d(i, i) = diag;
    if (i > 0) d(i, i - 1) = off;
    if (i + 1 < n) d(i, i + 1) = off;
  }
  return d;
}

Matrix TridiagonalToeplitz::apply(const Matrix& x) const {
  if (x.rows() != n) throw DomainError("TridiagonalToeplitz::apply: dimension mismatch");
  Matrix y(n, x.cols());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < x.cols(); ++j) {
      double v = diag * x(i, j);
      if (i > 0) v += off * x(i - 1, j);
      if (i + 1 < n) v += off * x(i + 1, j);
      y(i, j) = v;
    }
  }
  return y;
}

TridiagonalToeplitz second_difference(std::size_t n) { return {n, -2.0, 1.0}; }

namespace {

// Multiplies by the orthonormal eigenvector matrix of D,
// Q(i, k) = sqrt(2/M) sin((i+1)(k+1) pi / M). Q is symmetric and its own
// inverse. Entries come from a table of sin(p pi / M), p < 2M, so the phase
// is reduced exactly in integers.
class SineTransform {
public:
  explicit SineTransform(int m_space) : m_(static_cast<std::size_t>(m_space)), table_(2 * m_) {
    const double norm = std::sqrt(2.0 / m_space);
    for (std::size_t p = 0; p < table_.size(); ++p)
      table_[p] = norm * std::sin(static_cast<double>(p) * std::numbers::pi / m_space);
  }

  Matrix apply(const Matrix& x) const {
    const std::size_t n = m_ - 1;
    const std::size_t period = 2 * m_;
    Matrix y(n, x.cols());
    for (std::size_t i = 0; i < n; ++i) {
      auto yi = y.row(i);
      std::size_t phase = 0;
      for (std::size_t k = 0; k < n; ++k) {
        phase += i + 1;
        if (phase >= period) phase -= period;
        const double qik = table_[phase];
        const auto xk = x.row(k);
        for (std::size_t j = 0; j < yi.size(); ++j) yi[j] += qik * xk[j];
      }
    }
    return y;
  }

private:
  std::size_t m_;
  std::vector<double> table_;
};

} // namespace

CompactSystem assemble_compact(const SubdiffusionProblem& problem, const SmoothingMap& map,
                               const TemporalDiscretization& td, int m_space) {
  if (m_space < 3) throw DomainError("assemble_compact: M must be at least 3");
  if (td.coupling_W.rows() != td.size() || td.coupling_W.cols() != td.size())
    throw DomainError("assemble_compact: coupling matrix does not match node count");

  const std::size_t interior = static_cast<std::size_t>(m_space - 1);
  const std::size_t nt = td.size();
  const double x_len = problem.x_len();

  CompactSystem sys;
  sys.m_space = m_space;
  sys.dx = x_len / m_space;
  sys.k_gamma = problem.k_gamma();
  const double kdx2 = sys.k_gamma / (sys.dx * sys.dx);

  const TridiagonalToeplitz d = second_difference(interior);
  sys.mat_T = {interior, 1.0 - 2.0 / 12.0, 1.0 / 12.0};
  sys.mat_A = {interior, -2.0 * kdx2, kdx2};

  const TransformedFields fields = transform_fields(problem, map);

  Matrix v0(interior, nt);
  Matrix g(interior, nt);
  sys.b_v = Matrix(interior, nt);
  sys.b_h = Matrix(interior, nt);
  sys.b_g = Matrix(interior, nt);
  const std::size_t last = interior - 1;
  for (std::size_t n = 0; n < nt; ++n) {
    const double tau = td.nodes[n];
    const double jac = map.jacobian(tau);
    const double t = map.physical_time(tau);
    for (std::size_t k = 0; k < interior; ++k) {
      const double x = static_cast<double>(k + 1) * sys.dx;
      v0(k, n) = fields.h(x, tau);
      g(k, n) = fields.g(x, tau);
    }
    sys.b_v(0, n) = jac * problem.left_bc(t);
    sys.b_v(last, n) += jac * problem.right_bc(t);
    sys.b_h(0, n) = fields.h(0.0, tau);
    sys.b_h(last, n) += fields.h(x_len, tau);
    sys.b_g(0, n) = fields.g(0.0, tau);
    sys.b_g(last, n) += fields.g(x_len, tau);
  }

  const Matrix wt = td.coupling_W.transposed();
  const Matrix avg_v0 = v0 + (1.0 / 12.0) * (d.apply(v0) + sys.b_h);
  const Matrix avg_g = g + (1.0 / 12.0) * (d.apply(g) + sys.b_g);
  sys.rhs_S = (-1.0 / 12.0) * sys.b_v + avg_v0 + avg_g * wt + kdx2 * (sys.b_v * wt);
  return sys;
}

double sylvester_residual(const CompactSystem& sys, const Matrix& coupling_W, const Matrix& v) {
  const Matrix r = sys.mat_T.apply(v) - sys.mat_A.apply(v * coupling_W.transposed()) - sys.rhs_S;
  return r.max_abs();
}

Matrix solve_compact(const CompactSystem& sys, const TemporalDiscretization& td) {
  const std::size_t interior = static_cast<std::size_t>(sys.m_space - 1);
  const std::size_t nt = td.size();
  if (sys.rhs_S.rows() != interior || sys.rhs_S.cols() != nt)
    throw DomainError("solve_compact: right-hand side has wrong shape");

  const SineTransform sine(sys.m_space);
  const Matrix s_modal = sine.apply(sys.rhs_S);
  const double kdx2 = sys.k_gamma / (sys.dx * sys.dx);

  // Mode k: (t_k I - a_k W) v_k = s_k, with v_k the k-th row of Q^T V.
  // Solved in the balanced variable v_k = diag(jac) y_k.
  const Matrix wb = td.balanced_W();
  std::vector<double> jac = td.jacobians;
  if (jac.size() != nt) jac.assign(nt, 1.0);
  Matrix v_modal(interior, nt);
  for (std::size_t k = 0; k < interior; ++k) {
    const double sn = std::sin(static_cast<double>(k + 1) * std::numbers::pi / (2.0 * sys.m_space));
    const double eig = -4.0 * sn * sn;
    const double tk = 1.0 + eig / 12.0;
    const double ak = kdx2 * eig;
    Matrix mode = (-ak) * wb;
    for (std::size_t i = 0; i < nt; ++i) mode(i, i) += tk;
    const LuFactorization lu(std::move(mode));
    if (lu.rcond() < 1e-14)
      throw NumericalError("solve_compact: mode system " + std::to_string(k + 1) +
                           " is numerically singular");
    auto row = v_modal.row(k);
    const auto src = s_modal.row(k);
    for (std::size_t n = 0; n < nt; ++n) row[n] = src[n] / jac[n];
    lu.solve_in_place(row);
    for (std::size_t n = 0; n < nt; ++n) row[n] *= jac[n];
  }

  Matrix v = sine.apply(v_modal);
  const double scale = sys.rhs_S.max_abs();
  const double res = sylvester_residual(sys, td.coupling_W, v);
  if (res > 1e-10 * std::max(scale, 1e-300) && res > 0.0)
    throw NumericalError("solve_compact: Sylvester residual " + std::to_string(res) +
                         " exceeds tolerance");
  return v;
}

SolutionField compact_driver(const SubdiffusionProblem& problem, int q, int n_time, int m_space,
                             const CompactOptions& options) {
  const SmoothingMap map(0.0, problem.t_len(), q);
  const auto nodes = collocation_nodes(n_time, options.nodes);
  const TemporalDiscretization td = assemble_W(problem, map, nodes);
  const CompactSystem sys = assemble_compact(problem, map, td, m_space);
  const Matrix v = solve_compact(sys, td);

  SolutionField out;
  out.x_grid.resize(m_space + 1);
  for (int k = 0; k <= m_space; ++k) out.x_grid[k] = k * sys.dx;
  out.x_grid.back() = problem.x_len();
  out.t_grid.resize(td.size());
  out.values = Matrix(m_space + 1, td.size());
  for (std::size_t n = 0; n < td.size(); ++n) {
    const double tau = td.nodes[n];
    const double t = map.physical_time(tau);
    out.t_grid[n] = t;
    out.values(0, n) = problem.left_bc(t);
    out.values(m_space, n) = problem.right_bc(t);
    for (int k = 1; k < m_space; ++k) out.values(k, n) = recover_u(v(k - 1, n), map, tau);
  }
  return out;
}

} // namespace subdiff
