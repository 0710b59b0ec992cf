#include "subdiff/smoothing.hpp"

#include "subdiff/error.hpp"

#include <cmath>
#include <string>

namespace subdiff {

namespace {

// Integer power; q is small.
double ipow(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

// Relative width below which |t - s| is treated as the diagonal.
constexpr double kDiagonalRelTol = 1e-12;

} // namespace

SmoothingMap::SmoothingMap(double a, double b, int q) : a_(a), b_(b), q_(q) {
  if (!(b > a)) throw DomainError("SmoothingMap: requires b > a");
  if (q < 1 || q > kMaxSmoothingExponent)
    throw DomainError("SmoothingMap: q must be in [1, 6], got " + std::to_string(q));
  scale_ = std::pow(b - a, 1.0 - q);
}

double SmoothingMap::lambda(double t) const {
  if (t < a_ || t > b_) throw DomainError("lambda: argument outside [a, b]");
  return scale_ * ipow(t - a_, q_) + a_;
}

double SmoothingMap::lambda_deriv(double t) const {
  if (t < a_ || t > b_) throw DomainError("lambda_deriv: argument outside [a, b]");
  return q_ * scale_ * ipow(t - a_, q_ - 1);
}

double SmoothingMap::mu(double r) const {
  if (r < -1.0 || r > 1.0) throw DomainError("mu: argument outside [-1, 1]");
  // Endpoints exactly.
  if (r == -1.0) return a_;
  if (r == 1.0) return b_;
  return 0.5 * (b_ - a_) * r + 0.5 * (b_ + a_);
}

KernelEvaluator::KernelEvaluator(SmoothingMap map, double alpha) : map_(map), alpha_(alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("KernelEvaluator: alpha must lie in (0, 1)");
  const double len = map_.b() - map_.a();
  prefactor_ = std::pow(0.5 * len, 1.0 - alpha_) * std::pow(std::pow(len, 1.0 - map_.q()), -alpha_);
}

double KernelEvaluator::delta_alpha(double t, double s, KernelBranch branch) const {
  const double a = map_.a();
  const double b = map_.b();
  const int q = map_.q();
  if (t < a || t > b || s < a || s > b) throw DomainError("delta_alpha: argument outside [a, b]");
  if (branch == KernelBranch::Causal && s > t) throw DomainError("delta_alpha: requires s <= t");
  if (q == 1) return 1.0;

  const double x = t - a;
  const double y = s - a;
  if (std::abs(t - s) < kDiagonalRelTol * (b - a)) {
    const double mid = 0.5 * (x + y);
    if (mid <= 0.0) throw DomainError("delta_alpha: diagonal is singular at s = a for q >= 2");
    return std::pow(q * ipow(mid, q - 1), -alpha_);
  }
  // (x^q - y^q)/(x - y) = sum_{k=0}^{q-1} x^k y^{q-1-k}; free of cancellation.
  double quotient = 0.0;
  for (int k = 0; k < q; ++k) quotient += ipow(x, k) * ipow(y, q - 1 - k);
  return std::pow(quotient, -alpha_);
}

double KernelEvaluator::kernel_H(double tau_t, double tau_s, KernelBranch branch) const {
  if (tau_s <= -1.0 && tau_t <= -1.0 && map_.q() >= 2)
    throw DomainError("kernel_H: singular at tau_t = tau_s = -1 for q >= 2");
  const double t = map_.mu(tau_t);
  const double s = map_.mu(tau_s);
  return prefactor_ * map_.lambda_deriv(t) * delta_alpha(t, s, branch);
}

TransformedFields transform_fields(const SubdiffusionProblem& problem, const SmoothingMap& map) {
  if (map.a() != 0.0 || map.b() != problem.t_len())
    throw DomainError("transform_fields: smoothing map must span [0, T]");

  TransformedFields out;
  out.g = [problem, map](double x, double tau) {
    const double j = map.jacobian(tau);
    if (j == 0.0) return 0.0;
    return j * problem.source(x, map.physical_time(tau));
  };
  out.h = [problem, map](double x, double tau) { return map.jacobian(tau) * problem.initial(x); };
  if (problem.has_exact()) {
    out.v_exact = [problem, map](double x, double tau) {
      const double j = map.jacobian(tau);
      if (j == 0.0) return 0.0;
      return j * problem.exact(x, map.physical_time(tau));
    };
  }
  return out;
}

double recover_u(double v, const SmoothingMap& map, double tau, double eps_div) {
  const double j = map.jacobian(tau);
  if (j <= eps_div) throw DomainError("recover_u: vanishing Jacobian; use phi(x) at t = 0");
  return v / j;
}

} // namespace subdiff
