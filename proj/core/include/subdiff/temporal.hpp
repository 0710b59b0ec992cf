#pragma once

#include "subdiff/linalg.hpp"
#include "subdiff/problem.hpp"
#include "subdiff/smoothing.hpp"

#include <span>
#include <vector>

namespace subdiff {

/// Collocation node families. None contains tau = -1, where the transformed
/// solution is singular. RightRadau is the Gauss-Radau set that includes
/// tau = 1, so the last collocation time is t = T.
enum class NodeFamily { LegendreGauss, ChebyshevGauss, RightRadau };

inline constexpr int kMaxTimeIntervals = 256;

/// N+1 collocation nodes for 0 <= N <= 256, ascending.
std::vector<double> collocation_nodes(int n_time, NodeFamily family = NodeFamily::LegendreGauss);

/// Barycentric weights of distinct nodes, normalized to max |b_j| = 1.
/// Throws DomainError on duplicates.
std::vector<double> barycentric_weights(std::span<const double> nodes);

/// Lagrange cardinal polynomial I_j(s) in barycentric form.
double lagrange_eval(std::span<const double> nodes, std::span<const double> bary, std::size_t j,
                     double s);

/// out[j] = I_j(s) for all j.
void lagrange_basis(std::span<const double> nodes, std::span<const double> bary, double s,
                    std::span<double> out);

/// Product-integration weights
///   w(n, j) = int_{-1}^{tau_n} (tau_n - s)^{-alpha} I_j(s) ds,
/// exact up to round-off via an (N+1)-point Gauss-Jacobi rule.
Matrix singular_weights(std::span<const double> nodes, double alpha);

/// Time discretization of the smoothed equation. coupling_W(n, j) is
/// w(n, j) H(tau_n, tau_j) / Gamma(gamma); the semi-discrete scheme reads
///   v(tau_n) = h(tau_n) + sum_j W(n, j) (L v + g)(tau_j).
struct TemporalDiscretization {
  int n_time = 0;
  std::vector<double> nodes;
  std::vector<double> bary_weights;
  double alpha = 0.5;
  Matrix w_sing;
  Matrix coupling_W;
  /// lambda'(mu(tau_n)). Row n of coupling_W carries this factor, so the
  /// solvers work with diag(jac)^{-1} W diag(jac) to keep early-time rows
  /// at full relative precision.
  std::vector<double> jacobians;

  std::size_t size() const noexcept { return nodes.size(); }

  /// diag(jacobians)^{-1} coupling_W diag(jacobians).
  Matrix balanced_W() const;
};

TemporalDiscretization assemble_W(const SubdiffusionProblem& problem, const SmoothingMap& map,
                                  std::span<const double> nodes);

/// Variant with an explicit alpha and no problem; used for scalar tests.
TemporalDiscretization assemble_W(double gamma, const SmoothingMap& map,
                                  std::span<const double> nodes);

} // namespace subdiff
