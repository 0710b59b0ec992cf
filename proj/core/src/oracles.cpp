#include "subdiff/oracles.hpp"

#include "subdiff/error.hpp"
#include "subdiff/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace subdiff::oracle {

namespace {

constexpr double kMinPanelRatio = 1e-14;

// Panel at distances [d0, d1] from hi. Working in the distance keeps
// (hi - s)^{-alpha} accurate on panels only a few ulps wide.
double gl_panel(const std::function<double(double)>& f, double alpha, double hi, double d0,
                double d1, int points) {
  const QuadratureRule& rule = gauss_legendre(points);
  const double half = 0.5 * (d1 - d0);
  const double mid = 0.5 * (d1 + d0);
  double s = 0.0;
  for (std::size_t m = 0; m < rule.size(); ++m) {
    const double d = mid + half * rule.nodes[m];
    s += rule.weights[m] * std::pow(d, -alpha) * f(hi - d);
  }
  return half * s;
}

// Panel [p0, p1] away from hi, in absolute coordinates so that points near
// lo keep their relative accuracy.
double gl_panel_abs(const std::function<double(double)>& f, double alpha, double hi, double p0,
                    double p1, int points) {
  const QuadratureRule& rule = gauss_legendre(points);
  const double half = 0.5 * (p1 - p0);
  const double mid = 0.5 * (p1 + p0);
  double s = 0.0;
  for (std::size_t m = 0; m < rule.size(); ++m) {
    const double x = mid + half * rule.nodes[m];
    s += rule.weights[m] * std::pow(hi - x, -alpha) * f(x);
  }
  return half * s;
}

// Last panel [hi - r, hi]: the (hi - s)^{-alpha} factor goes into the rule.
double gj_tail(const std::function<double(double)>& f, double alpha, double hi, double r,
               int points) {
  const QuadratureRule& rule = gauss_jacobi(points, -alpha, 0.0);
  const double half = 0.5 * r;
  double s = 0.0;
  for (std::size_t m = 0; m < rule.size(); ++m) s += rule.weights[m] * f(hi - r + half * (rule.nodes[m] + 1.0));
  return std::pow(half, 1.0 - alpha) * s;
}

double graded_sum(const SingularIntegralSpec& spec, int points) {
  const double lo = spec.lo;
  const double hi = spec.hi;
  const double alpha = spec.singular_exponent;
  const double len = hi - lo;
  const double min_len = kMinPanelRatio * len;
  double total = 0.0;

  // Left half [lo, mid].
  const double half_len = 0.5 * len;
  const double mid = lo + half_len;
  if (spec.grade_lo) {
    double right = mid;
    double width = 0.5 * half_len;
    while (width > min_len) {
      total += gl_panel_abs(spec.integrand, alpha, hi, right - width, right, points);
      right -= width;
      width *= 0.5;
    }
    total += gl_panel_abs(spec.integrand, alpha, hi, lo, right, points);
  } else {
    total += gl_panel_abs(spec.integrand, alpha, hi, lo, mid, points);
  }

  // Right half, graded toward the singular endpoint.
  double remaining = half_len;
  while (remaining > min_len) {
    total += gl_panel(spec.integrand, alpha, hi, 0.5 * remaining, remaining, points);
    remaining *= 0.5;
  }
  total += gj_tail(spec.integrand, alpha, hi, remaining, points);
  return total;
}

} // namespace

SingularIntegralResult singular_integral(const SingularIntegralSpec& spec) {
  if (!(spec.hi > spec.lo)) throw DomainError("singular_integral: requires lo < hi");
  if (!(spec.singular_exponent > 0.0 && spec.singular_exponent < 1.0))
    throw DomainError("singular_integral: exponent must lie in (0, 1)");
  if (!spec.integrand) throw DomainError("singular_integral: integrand is empty");

  const double fine = graded_sum(spec, 30);
  const double coarse = graded_sum(spec, 20);
  SingularIntegralResult r;
  r.value = fine;
  const double diff = std::abs(fine - coarse);
  r.achieved_rel = fine == 0.0 ? diff : diff / std::abs(fine);
  r.converged = diff == 0.0 || r.achieved_rel <= spec.rel_tol;
  return r;
}

KroneckerResult kronecker_solve(const Matrix& t_mat, const Matrix& a_mat, const Matrix& w_mat,
                                const Matrix& s_mat) {
  const std::size_t m = t_mat.rows();
  const std::size_t n = w_mat.rows();
  if (t_mat.cols() != m || a_mat.rows() != m || a_mat.cols() != m || w_mat.cols() != n ||
      s_mat.rows() != m || s_mat.cols() != n)
    throw DomainError("kronecker_solve: inconsistent dimensions");
  const std::size_t size = m * n;
  if (size > 5000) throw DomainError("kronecker_solve: more than 5000 unknowns");

  // Unknown index of V(i, j) in the column-stacked vector: j*m + i.
  std::vector<std::vector<double>> k(size, std::vector<double>(size + 1, 0.0));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      auto& row = k[j * m + i];
      // (T V)(i, j) = sum_p T(i, p) V(p, j)
      for (std::size_t p = 0; p < m; ++p) row[j * m + p] += t_mat(i, p);
      // (A V W^T)(i, j) = sum_{p, l} A(i, p) V(p, l) W(j, l)
      for (std::size_t l = 0; l < n; ++l)
        for (std::size_t p = 0; p < m; ++p) row[l * m + p] -= a_mat(i, p) * w_mat(j, l);
      row[size] = s_mat(i, j);
    }
  }
  const auto original = k;

  for (std::size_t c = 0; c < size; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < size; ++r)
      if (std::abs(k[r][c]) > std::abs(k[piv][c])) piv = r;
    if (k[piv][c] == 0.0) throw NumericalError("kronecker_solve: singular system");
    std::swap(k[piv], k[c]);
    for (std::size_t r = c + 1; r < size; ++r) {
      const double f = k[r][c] / k[c][c];
      if (f == 0.0) continue;
      for (std::size_t q = c; q <= size; ++q) k[r][q] -= f * k[c][q];
    }
  }
  std::vector<double> x(size);
  for (std::size_t r = size; r-- > 0;) {
    double s = k[r][size];
    for (std::size_t q = r + 1; q < size; ++q) s -= k[r][q] * x[q];
    x[r] = s / k[r][r];
  }

  KroneckerResult out;
  out.v = Matrix(m, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i) out.v(i, j) = x[j * m + i];

  double res = 0.0, rhs = 0.0, xnorm = 0.0, knorm = 0.0;
  for (std::size_t r = 0; r < size; ++r) {
    double s = -original[r][size];
    double rowsum = 0.0;
    for (std::size_t q = 0; q < size; ++q) {
      s += original[r][q] * x[q];
      rowsum += std::abs(original[r][q]);
    }
    res = std::max(res, std::abs(s));
    rhs = std::max(rhs, std::abs(original[r][size]));
    knorm = std::max(knorm, rowsum);
  }
  for (double v : x) xnorm = std::max(xnorm, std::abs(v));
  const double scale = knorm * xnorm + rhs;
  out.rel_residual = scale == 0.0 ? 0.0 : res / scale;
  return out;
}

} // namespace subdiff::oracle
