#pragma once

#include "subdiff/linalg.hpp"

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace subdiff {

using SpaceTimeFn = std::function<double(double x, double t)>;
using SpaceFn = std::function<double(double x)>;
using TimeFn = std::function<double(double t)>;

/// Continuous problem
///
///   u_t = D_t^{1-gamma} ( k_gamma u_xx + f ),   0 < x < X, 0 < t <= T,
///   u(x, 0) = phi(x),  u(0, t) = psi1(t),  u(X, t) = psi2(t),
///
/// with D_t^{1-gamma} the Riemann-Liouville derivative. Instances are
/// immutable once built.
class SubdiffusionProblem {
public:
  struct Data {
    double gamma = 0.5;
    double k_gamma = 1.0;
    double x_len = 1.0;
    double t_len = 1.0;
    SpaceTimeFn source;
    SpaceFn initial;
    TimeFn left_bc;
    TimeFn right_bc;
    std::optional<SpaceTimeFn> exact;
  };

  /// Throws DomainError on invalid parameters. A corner mismatch between
  /// phi and psi1/psi2 at t = 0 is recorded in warnings() only.
  explicit SubdiffusionProblem(Data data);

  double gamma() const noexcept { return d_.gamma; }
  double alpha() const noexcept { return 1.0 - d_.gamma; }
  double k_gamma() const noexcept { return d_.k_gamma; }
  double x_len() const noexcept { return d_.x_len; }
  double t_len() const noexcept { return d_.t_len; }

  double source(double x, double t) const { return d_.source(x, t); }
  double initial(double x) const { return d_.initial(x); }
  double left_bc(double t) const { return d_.left_bc(t); }
  double right_bc(double t) const { return d_.right_bc(t); }

  bool has_exact() const noexcept { return d_.exact.has_value(); }
  /// Throws std::bad_optional_access when no exact solution is attached.
  double exact(double x, double t) const { return d_.exact.value()(x, t); }

  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

private:
  Data d_;
  std::vector<std::string> warnings_;
};

enum class CaseKind { SinX, SinPiX };

/// Manufactured solutions u = t^{c+gamma} sin(x) and u = t^{c+gamma} sin(pi x)
/// on [0,1] x [0,1] with K_gamma = 1.
struct ManufacturedCase {
  double c = 0.0;
  double gamma = 0.5;
  CaseKind kind = CaseKind::SinX;
  SpaceTimeFn exact;
  double k_gamma_coeff = 0.0; ///< Gamma(c+gamma+1) / Gamma(c+1)
};

/// Requires gamma in (0,1) and c > -1.
std::pair<SubdiffusionProblem, ManufacturedCase> manufactured_case(CaseKind kind, double c,
                                                                    double gamma);

/// Initial-value problem on [0,2] x [0,0.4] with a piecewise linear hat and
/// homogeneous data. K_gamma = 1.
SubdiffusionProblem example3_problem(double gamma);

/// Discrete solution: values(k, n) = u(x_grid[k], t_grid[n]).
struct SolutionField {
  std::vector<double> x_grid;
  std::vector<double> t_grid;
  Matrix values;
};

} // namespace subdiff
