#pragma once

#include "subdiff/linalg.hpp"
#include "subdiff/problem.hpp"
#include "subdiff/smoothing.hpp"
#include "subdiff/temporal.hpp"

#include <span>

namespace subdiff {

/// Fourth-order averaging: u_k + (u_{k-1} - 2 u_k + u_{k+1}) / 12 at interior
/// points, identity at k = 0 and k = M.
double average_apply(std::span<const double> u, std::size_t k);

/// Symmetric tridiagonal Toeplitz matrix tridiag(off, diag, off) of order n.
struct TridiagonalToeplitz {
  std::size_t n = 0;
  double diag = 0.0;
  double off = 0.0;

  Matrix dense() const;
  /// this * x
  Matrix apply(const Matrix& x) const;
};

/// Interior-unknown matrix form of the compact scheme,
///   T V - A V W^T = S,
/// with V of size (M-1) x (N+1), T = I + D/12, A = (K/dx^2) D and
/// D = tridiag(1, -2, 1).
struct CompactSystem {
  int m_space = 0;
  double dx = 0.0;
  double k_gamma = 1.0;
  TridiagonalToeplitz mat_T;
  TridiagonalToeplitz mat_A;
  Matrix rhs_S;
  /// Boundary blocks: only rows 0 and M-2 are nonzero.
  Matrix b_v;
  Matrix b_h;
  Matrix b_g;
};

/// D = tridiag(1, -2, 1) of order n.
TridiagonalToeplitz second_difference(std::size_t n);

/// Requires M >= 3.
CompactSystem assemble_compact(const SubdiffusionProblem& problem, const SmoothingMap& map,
                               const TemporalDiscretization& td, int m_space);

/// ||T V - A V W^T - S||_inf.
double sylvester_residual(const CompactSystem& sys, const Matrix& coupling_W, const Matrix& v);

/// Solves the Sylvester-type system by the sine eigenbasis of D, giving one
/// (N+1) x (N+1) system per mode. Throws NumericalError when a mode system
/// has condition number above 1e14 or the final relative residual exceeds
/// 1e-10.
Matrix solve_compact(const CompactSystem& sys, const TemporalDiscretization& td);

struct CompactOptions {
  NodeFamily nodes = NodeFamily::LegendreGauss;
};

/// End-to-end compact solve. The returned field has x_grid = k dx for
/// k = 0..M and t_grid = lambda(mu(tau_n)).
SolutionField compact_driver(const SubdiffusionProblem& problem, int q, int n_time, int m_space,
                             const CompactOptions& options = {});

} // namespace subdiff
