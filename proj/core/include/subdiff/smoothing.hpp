#pragma once

#include "subdiff/problem.hpp"

#include <optional>

namespace subdiff {

inline constexpr int kMaxSmoothingExponent = 6;

/// Change of variables t = lambda(mu(tau)) taking tau in [-1, 1] to [a, b],
/// where lambda(t) = (b-a)^{1-q} (t-a)^q + a and mu is the affine map
/// [-1, 1] -> [a, b]. For q >= 2, lambda flattens the start of the interval.
class SmoothingMap {
public:
  /// Requires b > a and 1 <= q <= 6.
  SmoothingMap(double a, double b, int q);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  int q() const noexcept { return q_; }

  /// lambda(t) for a <= t <= b.
  double lambda(double t) const;
  double lambda_deriv(double t) const;
  /// mu(r) for -1 <= r <= 1.
  double mu(double r) const;

  /// lambda(mu(tau)).
  double physical_time(double tau) const { return lambda(mu(tau)); }
  /// lambda'(mu(tau)).
  double jacobian(double tau) const { return lambda_deriv(mu(tau)); }

private:
  double a_;
  double b_;
  int q_;
  double scale_; // (b-a)^{1-q}
};

/// How delta_alpha / kernel_H treat s > t.
enum class KernelBranch {
  /// Volterra ordering required: s > t is a domain error.
  Causal,
  /// Symmetric divided difference, valid on the whole square. Used when the
  /// kernel is sampled at every collocation node, including those beyond t.
  Symmetric,
};

/// Kernel factors of the smoothed Volterra equation, with alpha = 1 - gamma.
class KernelEvaluator {
public:
  /// Requires 0 < alpha < 1.
  KernelEvaluator(SmoothingMap map, double alpha);

  const SmoothingMap& map() const noexcept { return map_; }
  double alpha() const noexcept { return alpha_; }

  /// ( ((t-a)^q - (s-a)^q) / (t-s) )^{-alpha}, and (q (s-a)^{q-1})^{-alpha}
  /// on the diagonal. Arguments are physical times in [a, b].
  double delta_alpha(double t, double s, KernelBranch branch = KernelBranch::Causal) const;

  /// H(tau_t, tau_s) = ((b-a)/2)^{1-alpha} ((b-a)^{1-q})^{-alpha}
  ///                   lambda'(mu(tau_t)) delta_alpha(mu(tau_t), mu(tau_s)).
  double kernel_H(double tau_t, double tau_s, KernelBranch branch = KernelBranch::Causal) const;

private:
  SmoothingMap map_;
  double alpha_;
  double prefactor_;
};

/// Fields of the transformed equation on [0, X] x [-1, 1]:
///   g(x, tau) = lambda'(mu(tau)) f(x, lambda(mu(tau)))
///   h(x, tau) = lambda'(mu(tau)) phi(x)
/// and, when the problem has a known solution,
///   v(x, tau) = lambda'(mu(tau)) u(x, lambda(mu(tau))).
struct TransformedFields {
  std::optional<SpaceTimeFn> v_exact;
  SpaceTimeFn g;
  SpaceTimeFn h;
};

/// The map must span [0, T] of the problem.
TransformedFields transform_fields(const SubdiffusionProblem& problem, const SmoothingMap& map);

inline constexpr double kDefaultEpsDiv = 1e-14;

/// u = v / lambda'(mu(tau)). Throws DomainError when the Jacobian is at or
/// below eps_div (t = 0 with q >= 2); callers report phi there instead.
double recover_u(double v, const SmoothingMap& map, double tau, double eps_div = kDefaultEpsDiv);

} // namespace subdiff
