#pragma once

// Slow, independent reference computations used to check the fast paths.
// Nothing here shares code with the solvers except the Gauss rule generator.

#include "subdiff/linalg.hpp"

#include <functional>

namespace subdiff::oracle {

/// int_lo^hi (hi - s)^{-alpha} f(s) ds with f smooth away from the endpoints.
struct SingularIntegralSpec {
  std::function<double(double)> integrand;
  double lo = -1.0;
  double hi = 1.0;
  double singular_exponent = 0.5;
  double rel_tol = 1e-12;
  /// Also grade panels toward lo, for integrands with an algebraic
  /// endpoint singularity there (e.g. s^c with -1 < c < 0).
  bool grade_lo = false;
};

struct SingularIntegralResult {
  double value = 0.0;
  double achieved_rel = 0.0; ///< |I_30 - I_20| / |I_30|
  bool converged = false;
};

/// Geometrically graded panels (ratio 1/2) accumulating at hi, 30-point
/// Gauss-Legendre per panel and a Gauss-Jacobi rule on the final panel.
SingularIntegralResult singular_integral(const SingularIntegralSpec& spec);

struct KroneckerResult {
  Matrix v;
  double rel_residual = 0.0;
};

/// Solves T V - A V W^T = S by forming ((I kron T) - (W kron A)) acting on
/// the column-stacked V and applying dense Gaussian elimination with partial
/// pivoting. T, A are m x m, W is n x n, S is m x n; m n <= 5000.
KroneckerResult kronecker_solve(const Matrix& t_mat, const Matrix& a_mat, const Matrix& w_mat,
                                const Matrix& s_mat);

} // namespace subdiff::oracle
