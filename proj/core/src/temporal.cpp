#include "subdiff/temporal.hpp"

#include "subdiff/error.hpp"
#include "subdiff/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace subdiff {

std::vector<double> collocation_nodes(int n_time, NodeFamily family) {
  if (n_time < 0 || n_time > kMaxTimeIntervals)
    throw DomainError("collocation_nodes: N must be in [0, 256], got " + std::to_string(n_time));
  const int count = n_time + 1;
  switch (family) {
  case NodeFamily::LegendreGauss:
    return gauss_legendre(count).nodes;
  case NodeFamily::ChebyshevGauss: {
    std::vector<double> nodes(count);
    for (int i = 0; i < count; ++i)
      nodes[i] = -std::cos((2.0 * i + 1.0) * std::numbers::pi / (2.0 * count));
    return nodes;
  }
  case NodeFamily::RightRadau: {
    // Zeros of P_N^{(1,0)} plus the endpoint.
    std::vector<double> nodes;
    if (n_time > 0) nodes = gauss_jacobi(n_time, 1.0, 0.0).nodes;
    nodes.push_back(1.0);
    return nodes;
  }
  }
  throw DomainError("collocation_nodes: unknown family");
}

std::vector<double> barycentric_weights(std::span<const double> nodes) {
  const std::size_t n = nodes.size();
  std::vector<double> w(n, 1.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      if (k == j) continue;
      const double d = nodes[j] - nodes[k];
      if (d == 0.0) throw DomainError("barycentric_weights: duplicate nodes");
      // Scaled by 2 (the interval length) to keep products in range.
      w[j] *= 2.0 * d;
    }
    w[j] = 1.0 / w[j];
  }
  double big = 0.0;
  for (double x : w) big = std::max(big, std::abs(x));
  for (double& x : w) x /= big;
  return w;
}

void lagrange_basis(std::span<const double> nodes, std::span<const double> bary, double s,
                    std::span<double> out) {
  const std::size_t n = nodes.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (s == nodes[k]) {
      std::fill(out.begin(), out.end(), 0.0);
      out[k] = 1.0;
      return;
    }
  }
  double denom = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = bary[k] / (s - nodes[k]);
    denom += out[k];
  }
  for (std::size_t k = 0; k < n; ++k) out[k] /= denom;
}

double lagrange_eval(std::span<const double> nodes, std::span<const double> bary, std::size_t j,
                     double s) {
  std::vector<double> all(nodes.size());
  lagrange_basis(nodes, bary, s, all);
  return all.at(j);
}

Matrix singular_weights(std::span<const double> nodes, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("singular_weights: alpha must lie in (0, 1)");
  const std::size_t n = nodes.size();
  const auto bary = barycentric_weights(nodes);
  const QuadratureRule& rule = gauss_jacobi(static_cast<int>(n), -alpha, 0.0);

  Matrix w(n, n);
  std::vector<double> basis(n);
  for (std::size_t row = 0; row < n; ++row) {
    const double half = 0.5 * (nodes[row] + 1.0);
    const double scale = std::pow(half, 1.0 - alpha);
    auto wr = w.row(row);
    for (std::size_t m = 0; m < rule.size(); ++m) {
      const double s = half * rule.nodes[m] + 0.5 * (nodes[row] - 1.0);
      lagrange_basis(nodes, bary, s, basis);
      for (std::size_t j = 0; j < n; ++j) wr[j] += rule.weights[m] * basis[j];
    }
    for (double& x : wr) x *= scale;
  }
  return w;
}

TemporalDiscretization assemble_W(double gamma, const SmoothingMap& map,
                                  std::span<const double> nodes) {
  if (nodes.empty()) throw DomainError("assemble_W: empty node set");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!(nodes[i] > -1.0 && nodes[i] <= 1.0))
      throw DomainError("assemble_W: nodes must lie in (-1, 1]");
    if (i > 0 && !(nodes[i] > nodes[i - 1]))
      throw DomainError("assemble_W: nodes must be strictly increasing");
  }

  TemporalDiscretization td;
  td.n_time = static_cast<int>(nodes.size()) - 1;
  td.nodes.assign(nodes.begin(), nodes.end());
  td.bary_weights = barycentric_weights(nodes);
  td.alpha = 1.0 - gamma;
  td.w_sing = singular_weights(nodes, td.alpha);

  td.jacobians.resize(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) td.jacobians[i] = map.jacobian(nodes[i]);

  const KernelEvaluator kernel(map, td.alpha);
  const double inv_gamma = 1.0 / gamma_fn(gamma);
  const std::size_t n = nodes.size();
  td.coupling_W = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      td.coupling_W(i, j) =
          td.w_sing(i, j) * kernel.kernel_H(nodes[i], nodes[j], KernelBranch::Symmetric) * inv_gamma;
  return td;
}

Matrix TemporalDiscretization::balanced_W() const {
  Matrix b = coupling_W;
  if (jacobians.size() != size()) return b;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j) b(i, j) *= jacobians[j] / jacobians[i];
  return b;
}

TemporalDiscretization assemble_W(const SubdiffusionProblem& problem, const SmoothingMap& map,
                                  std::span<const double> nodes) {
  return assemble_W(problem.gamma(), map, nodes);
}

} // namespace subdiff
