#pragma once

#include <span>
#include <vector>

namespace subdiff {

/// Gauss rule for the weight (1-x)^a_exp (1+x)^b_exp on [-1, 1].
struct QuadratureRule {
  std::vector<double> nodes;   ///< strictly increasing, inside (-1, 1)
  std::vector<double> weights; ///< positive
  double a_exp = 0.0;
  double b_exp = 0.0;

  std::size_t size() const noexcept { return nodes.size(); }

  /// Sum of w_i f(x_i).
  template <class F>
  double apply(F&& f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
    return s;
  }
};

inline constexpr int kMaxQuadraturePoints = 2048;

/// Gamma function for x > 0.
double gamma_fn(double x);

/// Beta function B(x, y) for x, y > 0.
double beta_fn(double x, double y);

/// Cached n-point Gauss-Legendre rule, 1 <= n <= 2048. The reference stays
/// valid for the lifetime of the program.
const QuadratureRule& gauss_legendre(int n);

/// Cached n-point Gauss-Jacobi rule for weight (1-x)^a_exp (1+x)^b_exp.
const QuadratureRule& gauss_jacobi(int n, double a_exp, double b_exp);

/// Uncached Golub-Welsch construction behind gauss_jacobi.
QuadratureRule build_gauss_jacobi(int n, double a_exp, double b_exp);

/// Legendre polynomial L_k(x) by the three-term recurrence.
double legendre_eval(int k, double x);

/// L_k'(x).
double legendre_deriv(int k, double x);

/// Fills out[k] = L_k(x) for k = 0 .. out.size()-1.
void legendre_all(double x, std::span<double> out);

} // namespace subdiff
