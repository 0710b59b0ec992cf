#include "subdiff/problem.hpp"

#include "subdiff/error.hpp"
#include "subdiff/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace subdiff {

namespace {
constexpr double kCornerTol = 1e-12;
}

SubdiffusionProblem::SubdiffusionProblem(Data data) : d_(std::move(data)) {
  if (!(d_.gamma > 0.0 && d_.gamma < 1.0)) throw DomainError("gamma must lie in (0, 1)");
  if (!(d_.k_gamma > 0.0)) throw DomainError("k_gamma must be positive");
  if (!(d_.x_len > 0.0)) throw DomainError("x_len must be positive");
  if (!(d_.t_len > 0.0)) throw DomainError("t_len must be positive");
  if (!d_.source || !d_.initial || !d_.left_bc || !d_.right_bc)
    throw DomainError("source, initial and boundary functions must all be set");

  const double left = d_.initial(0.0) - d_.left_bc(0.0);
  const double right = d_.initial(d_.x_len) - d_.right_bc(0.0);
  if (std::abs(left) > kCornerTol) {
    std::ostringstream os;
    os << "phi(0) and psi1(0) differ by " << left;
    warnings_.push_back(os.str());
  }
  if (std::abs(right) > kCornerTol) {
    std::ostringstream os;
    os << "phi(X) and psi2(0) differ by " << right;
    warnings_.push_back(os.str());
  }
}

std::pair<SubdiffusionProblem, ManufacturedCase> manufactured_case(CaseKind kind, double c,
                                                                    double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw DomainError("manufactured_case: gamma must lie in (0, 1)");
  if (!(c > -1.0)) throw DomainError("manufactured_case: c must exceed -1");

  const double kg = gamma_fn(c + gamma + 1.0) / gamma_fn(c + 1.0);
  const double beta = c + gamma;
  const double freq = kind == CaseKind::SinX ? 1.0 : std::numbers::pi;
  const double freq2 = freq * freq;

  auto exact = [beta, freq](double x, double t) { return std::pow(t, beta) * std::sin(freq * x); };

  SubdiffusionProblem::Data d;
  d.gamma = gamma;
  d.k_gamma = 1.0;
  d.x_len = 1.0;
  d.t_len = 1.0;
  d.source = [kg, c, beta, freq, freq2](double x, double t) {
    return (kg * std::pow(t, c) + freq2 * std::pow(t, beta)) * std::sin(freq * x);
  };
  d.initial = [](double) { return 0.0; };
  d.left_bc = [](double) { return 0.0; };
  if (kind == CaseKind::SinX) {
    d.right_bc = [beta](double t) { return std::pow(t, beta) * std::sin(1.0); };
  } else {
    d.right_bc = [](double) { return 0.0; };
  }
  d.exact = exact;

  ManufacturedCase mc;
  mc.c = c;
  mc.gamma = gamma;
  mc.kind = kind;
  mc.exact = exact;
  mc.k_gamma_coeff = kg;
  return {SubdiffusionProblem(std::move(d)), std::move(mc)};
}

SubdiffusionProblem example3_problem(double gamma) {
  SubdiffusionProblem::Data d;
  d.gamma = gamma;
  d.k_gamma = 1.0;
  d.x_len = 2.0;
  d.t_len = 0.4;
  d.source = [](double, double) { return 0.0; };
  d.initial = [](double x) { return x <= 0.5 ? 2.0 * x : (4.0 - 2.0 * x) / 3.0; };
  d.left_bc = [](double) { return 0.0; };
  d.right_bc = [](double) { return 0.0; };
  return SubdiffusionProblem(std::move(d));
}

} // namespace subdiff
