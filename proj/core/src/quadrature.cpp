#include "subdiff/quadrature.hpp"

#include "subdiff/error.hpp"
#include "subdiff/linalg.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <tuple>

namespace subdiff {

double gamma_fn(double x) {
  if (!(x > 0.0)) throw DomainError("gamma_fn: argument must be positive, got " + std::to_string(x));
  return std::tgamma(x);
}

double beta_fn(double x, double y) {
  if (!(x > 0.0) || !(y > 0.0)) throw DomainError("beta_fn: arguments must be positive");
  return std::exp(std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y));
}

namespace {

// Recurrence coefficients of the monic Jacobi polynomials: diagonal alpha_k
// and off-diagonal sqrt(beta_k) of the Jacobi matrix.
void jacobi_recurrence(int n, double a, double b, std::vector<double>& diag,
                       std::vector<double>& off) {
  diag.resize(n);
  off.resize(n > 0 ? n - 1 : 0);
  const double ab = a + b;
  for (int k = 0; k < n; ++k) {
    if (k == 0) {
      diag[k] = (b - a) / (ab + 2.0);
    } else {
      const double t = 2.0 * k + ab;
      diag[k] = (b * b - a * a) / (t * (t + 2.0));
    }
  }
  for (int k = 1; k < n; ++k) {
    const double t = 2.0 * k + ab;
    double beta;
    if (k == 1) {
      beta = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      beta = 4.0 * k * (k + a) * (k + b) * (k + ab) / (t * t * (t + 1.0) * (t - 1.0));
    }
    off[k - 1] = std::sqrt(beta);
  }
}

struct RuleCache {
  std::shared_mutex mutex;
  std::map<std::tuple<int, double, double>, std::unique_ptr<const QuadratureRule>> rules;
};

RuleCache& cache() {
  static RuleCache c;
  return c;
}

} // namespace

QuadratureRule build_gauss_jacobi(int n, double a_exp, double b_exp) {
  if (n < 1 || n > kMaxQuadraturePoints)
    throw DomainError("gauss_jacobi: n must be in [1, 2048], got " + std::to_string(n));
  if (!(a_exp > -1.0) || !(b_exp > -1.0))
    throw DomainError("gauss_jacobi: exponents must exceed -1");

  std::vector<double> diag, off;
  jacobi_recurrence(n, a_exp, b_exp, diag, off);
  const TridiagonalEigen eig = tridiagonal_eigen(diag, off);

  const double mu0 = std::exp2(a_exp + b_exp + 1.0) * beta_fn(a_exp + 1.0, b_exp + 1.0);
  QuadratureRule rule;
  rule.a_exp = a_exp;
  rule.b_exp = b_exp;
  rule.nodes = eig.values;
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) rule.weights[i] = mu0 * eig.first_components[i] * eig.first_components[i];

  // Symmetric weight: enforce exact reflection symmetry of the rule.
  if (a_exp == b_exp) {
    for (int i = 0, j = n - 1; i <= j; ++i, --j) {
      const double x = 0.5 * (rule.nodes[j] - rule.nodes[i]);
      const double w = 0.5 * (rule.weights[i] + rule.weights[j]);
      rule.nodes[i] = -x;
      rule.nodes[j] = x;
      rule.weights[i] = rule.weights[j] = w;
    }
  }
  return rule;
}

const QuadratureRule& gauss_jacobi(int n, double a_exp, double b_exp) {
  auto& c = cache();
  const auto key = std::make_tuple(n, a_exp, b_exp);
  {
    std::shared_lock lock(c.mutex);
    if (auto it = c.rules.find(key); it != c.rules.end()) return *it->second;
  }
  auto rule = std::make_unique<const QuadratureRule>(build_gauss_jacobi(n, a_exp, b_exp));
  std::unique_lock lock(c.mutex);
  auto [it, inserted] = c.rules.try_emplace(key, std::move(rule));
  return *it->second;
}

const QuadratureRule& gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

double legendre_eval(int k, double x) {
  if (k < 0) throw DomainError("legendre_eval: negative degree");
  if (k == 0) return 1.0;
  double p0 = 1.0, p1 = x;
  for (int j = 1; j < k; ++j) {
    const double p2 = ((2.0 * j + 1.0) * x * p1 - j * p0) / (j + 1.0);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

double legendre_deriv(int k, double x) {
  if (k < 0) throw DomainError("legendre_deriv: negative degree");
  if (k == 0) return 0.0;
  // L'_{j+1} = L'_{j-1} + (2j+1) L_j
  double p0 = 1.0, p1 = x;  // L_{j-1}, L_j
  double d0 = 0.0, d1 = 1.0; // L'_{j-1}, L'_j
  for (int j = 1; j < k; ++j) {
    const double p2 = ((2.0 * j + 1.0) * x * p1 - j * p0) / (j + 1.0);
    const double d2 = d0 + (2.0 * j + 1.0) * p1;
    p0 = p1;
    p1 = p2;
    d0 = d1;
    d1 = d2;
  }
  return d1;
}

void legendre_all(double x, std::span<double> out) {
  if (out.empty()) return;
  out[0] = 1.0;
  if (out.size() == 1) return;
  out[1] = x;
  for (std::size_t j = 1; j + 1 < out.size(); ++j) {
    const double jd = static_cast<double>(j);
    out[j + 1] = ((2.0 * jd + 1.0) * x * out[j] - jd * out[j - 1]) / (jd + 1.0);
  }
}

} // namespace subdiff
