#include "subdiff/acceptance.hpp"

#include "subdiff/compact.hpp"
#include "subdiff/error.hpp"
#include "subdiff/experiments.hpp"
#include "subdiff/oracles.hpp"
#include "subdiff/quadrature.hpp"
#include "subdiff/spectral.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

namespace subdiff {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

std::string fix(double v, int digits = 3) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

// Errors under the library metric (Legendre-Gauss nodes, max over all
// sampled points) and, for context only, under the reference protocol
// (right Radau nodes, final time).
double compact_err(double c, double gamma, int q, int n, int m, NodeFamily nodes = NodeFamily::LegendreGauss,
                   ErrorMetric metric = ErrorMetric::AllNodes) {
  const auto [p, mc] = manufactured_case(CaseKind::SinX, c, gamma);
  return max_error(compact_driver(p, q, n, m, {nodes}), mc.exact, metric);
}

double spectral_err(double c, double gamma, int q, int n, int m, NodeFamily nodes = NodeFamily::LegendreGauss,
                    ErrorMetric metric = ErrorMetric::AllNodes) {
  const auto [p, mc] = manufactured_case(CaseKind::SinPiX, c, gamma);
  return max_error(spectral_solve(p, q, n, m, {nodes}), mc.exact, metric);
}

double compact_ref(double c, double gamma, int q, int n, int m) {
  return compact_err(c, gamma, q, n, m, NodeFamily::RightRadau, ErrorMetric::FinalTime);
}

double spectral_ref(double c, double gamma, int q, int n, int m) {
  return spectral_err(c, gamma, q, n, m, NodeFamily::RightRadau, ErrorMetric::FinalTime);
}

struct SpatialStudy {
  std::vector<double> err;
  std::vector<double> order; // order[i] between M[i] and M[i+1]
};

const std::vector<int> kSpatialM = {10, 20, 30, 40, 50};

SpatialStudy spatial_study(double c, int q) {
  SpatialStudy s;
  for (int m : kSpatialM) s.err.push_back(compact_err(c, 0.6, q, 40, m));
  for (std::size_t i = 0; i + 1 < kSpatialM.size(); ++i) {
    const auto o = observed_order(s.err[i], s.err[i + 1],
                                  static_cast<double>(kSpatialM[i + 1]) / kSpatialM[i]);
    s.order.push_back(o.value_or(std::nan("")));
  }
  return s;
}

std::string orders_text(const SpatialStudy& s) {
  std::string out;
  for (std::size_t i = 0; i < s.order.size(); ++i) out += (i ? "," : "") + fix(s.order[i], 2);
  return out;
}

bool order_near_four(const SpatialStudy& s) {
  for (double o : s.order)
    if (!(std::abs(o - 4.0) <= 0.05)) return false;
  return true;
}

void budget(CriterionResult& r, double limit) {
  if (r.seconds >= limit) {
    r.passed = false;
    r.detail += "; runtime " + fix(r.seconds, 2) + " s over budget " + fix(limit, 0) + " s";
  }
}

CriterionResult c1() {
  CriterionResult r{1, "spatial fourth order, c=1.9", true, {}, 0.0};
  const auto start = Clock::now();
  std::ostringstream d;
  for (int q = 1; q <= 3; ++q) {
    const SpatialStudy s = spatial_study(1.9, q);
    const bool ok_order = order_near_four(s);
    const bool ok_mag = s.err[0] >= 2.11e-8 / 5.0 && s.err[0] <= 2.11e-8 * 5.0;
    r.passed = r.passed && ok_order && ok_mag;
    d << (q > 1 ? "; " : "") << "q=" << q << " e(M=10)=" << sci(s.err[0]) << " orders " << orders_text(s);
  }
  r.seconds = seconds_since(start);
  d << " | final-time Radau: q=1 e(M=50)=" << sci(compact_ref(1.9, 0.6, 1, 40, 50));
  r.detail = d.str();
  budget(r, 10.0);
  return r;
}

CriterionResult c2() {
  CriterionResult r{2, "order collapse and restoration, c=0.1", true, {}, 0.0};
  const auto start = Clock::now();
  std::ostringstream d;
  const SpatialStudy s1 = spatial_study(0.1, 1);
  // Steps ending at M = 30, 40, 50.
  for (std::size_t i = 1; i < s1.order.size(); ++i) r.passed = r.passed && s1.order[i] <= 1.0;
  d << "q=1 orders " << orders_text(s1);
  for (int q = 2; q <= 3; ++q) {
    const SpatialStudy s = spatial_study(0.1, q);
    r.passed = r.passed && order_near_four(s) && s.err.back() <= 5e-10;
    d << "; q=" << q << " e(M=50)=" << sci(s.err.back()) << " orders " << orders_text(s);
  }
  r.seconds = seconds_since(start);
  d << " | final-time Radau e(M=50): q=2 " << sci(compact_ref(0.1, 0.6, 2, 40, 50)) << " q=3 "
    << sci(compact_ref(0.1, 0.6, 3, 40, 50));
  r.detail = d.str();
  budget(r, 10.0);
  return r;
}

CriterionResult c3() {
  CriterionResult r{3, "temporal improvement by smoothing, c=0.5", false, {}, 0.0};
  const auto start = Clock::now();
  double e14[4] = {};
  for (int q = 1; q <= 3; ++q)
    for (int n : {6, 8, 10, 12, 14}) {
      const double e = compact_err(0.5, 0.8, q, n, 2000);
      if (n == 14) e14[q] = e;
    }
  r.seconds = seconds_since(start);
  r.passed = e14[1] >= 1e-7 && e14[2] <= 3e-9 && e14[3] <= 1e-9;
  r.detail = "N=14: q=1 " + sci(e14[1]) + " q=2 " + sci(e14[2]) + " q=3 " + sci(e14[3]) +
             " | final-time Radau: q=1 " + sci(compact_ref(0.5, 0.8, 1, 14, 2000)) + " q=2 " +
             sci(compact_ref(0.5, 0.8, 2, 14, 2000)) + " q=3 " + sci(compact_ref(0.5, 0.8, 3, 14, 2000));
  budget(r, 120.0);
  return r;
}

CriterionResult c4() {
  CriterionResult r{4, "smooth-solution crossover, c=3.1", false, {}, 0.0};
  const auto start = Clock::now();
  const double q1n6 = compact_err(3.1, 0.5, 1, 6, 2000);
  const double q3n6 = compact_err(3.1, 0.5, 3, 6, 2000);
  const double q2n14 = compact_err(3.1, 0.5, 2, 14, 2000);
  const double q3n14 = compact_err(3.1, 0.5, 3, 14, 2000);
  r.seconds = seconds_since(start);
  r.passed = q1n6 < q3n6 && q2n14 <= 1e-10 && q3n14 <= 1e-10;
  r.detail = "N=6: q=1 " + sci(q1n6) + " q=3 " + sci(q3n6) + "; N=14: q=2 " + sci(q2n14) + " q=3 " + sci(q3n14);
  budget(r, 120.0);
  return r;
}

CriterionResult c5() {
  CriterionResult r{5, "spectral high accuracy, c=2.5", false, {}, 0.0};
  const auto start = Clock::now();
  const double e = spectral_err(2.5, 0.4, 2, 14, 200);
  r.seconds = seconds_since(start);
  r.passed = e <= 5e-12;
  r.detail = "q=2 N=14 M'=200: " + sci(e) + " | final-time Radau: " + sci(spectral_ref(2.5, 0.4, 2, 14, 200));
  budget(r, 30.0);
  return r;
}

CriterionResult c6() {
  CriterionResult r{6, "severe low regularity, c=-0.1", false, {}, 0.0};
  const auto start = Clock::now();
  const double e1 = spectral_err(-0.1, 0.4, 1, 50, 200);
  const double e3 = spectral_err(-0.1, 0.4, 3, 50, 200);
  r.seconds = seconds_since(start);
  r.passed = e1 >= 1e-8 && e3 <= 1e-10;
  r.detail = "N=50: q=1 " + sci(e1) + " q=3 " + sci(e3) + " | final-time Radau: q=1 " +
             sci(spectral_ref(-0.1, 0.4, 1, 50, 200)) + " q=3 " + sci(spectral_ref(-0.1, 0.4, 3, 50, 200));
  budget(r, 60.0);
  return r;
}

CriterionResult c7() {
  CriterionResult r{7, "weight identities", true, {}, 0.0};
  const auto start = Clock::now();
  double worst_sum = 0.0;
  double worst_oracle = 0.0;
  for (double alpha : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    for (int n_time = 2; n_time <= 40; ++n_time) {
      const auto nodes = collocation_nodes(n_time);
      const Matrix w = singular_weights(nodes, alpha);
      for (std::size_t n = 0; n < nodes.size(); ++n) {
        double sum = 0.0;
        for (std::size_t j = 0; j < nodes.size(); ++j) sum += w(n, j);
        const double exact = std::pow(nodes[n] + 1.0, 1.0 - alpha) / (1.0 - alpha);
        worst_sum = std::max(worst_sum, std::abs(sum - exact) / exact);
      }
      if (n_time > 8) continue;
      const auto bary = barycentric_weights(nodes);
      for (std::size_t n = 0; n < nodes.size(); ++n) {
        for (std::size_t j = 0; j < nodes.size(); ++j) {
          oracle::SingularIntegralSpec spec;
          spec.integrand = [&, j](double s) { return lagrange_eval(nodes, bary, j, s); };
          spec.lo = -1.0;
          spec.hi = nodes[n];
          spec.singular_exponent = alpha;
          const auto res = oracle::singular_integral(spec);
          worst_oracle = std::max(worst_oracle, std::abs(res.value - w(n, j)));
        }
      }
    }
  }
  r.seconds = seconds_since(start);
  r.passed = worst_sum <= 1e-11 && worst_oracle <= 1e-10;
  r.detail = "max rel row-sum error " + sci(worst_sum) + ", max |w - oracle| " + sci(worst_oracle);
  budget(r, 30.0);
  return r;
}

Matrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = u(rng);
  return m;
}

double rel_diff(const Matrix& a, const Matrix& b) {
  return (a - b).max_abs() / std::max(b.max_abs(), 1e-300);
}

CriterionResult c8() {
  CriterionResult r{8, "eigen paths agree with Kronecker oracle", true, {}, 0.0};
  const auto start = Clock::now();
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<int> pick_q(1, 3);
  std::uniform_real_distribution<double> pick_gamma(0.1, 0.9);
  std::uniform_real_distribution<double> pick_k(0.2, 3.0);

  double worst_compact = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int m_space = std::uniform_int_distribution<int>(3, 12)(rng);
    const int n_time = std::uniform_int_distribution<int>(0, 8)(rng);
    const SmoothingMap map(0.0, 1.0, pick_q(rng));
    const TemporalDiscretization td = assemble_W(pick_gamma(rng), map, collocation_nodes(n_time));
    CompactSystem sys;
    sys.m_space = m_space;
    sys.dx = 1.0 / m_space;
    sys.k_gamma = pick_k(rng);
    const std::size_t interior = static_cast<std::size_t>(m_space - 1);
    const double kdx2 = sys.k_gamma / (sys.dx * sys.dx);
    sys.mat_T = {interior, 1.0 - 2.0 / 12.0, 1.0 / 12.0};
    sys.mat_A = {interior, -2.0 * kdx2, kdx2};
    sys.rhs_S = random_matrix(interior, td.size(), rng);
    const Matrix fast = solve_compact(sys, td);
    const auto ref = oracle::kronecker_solve(sys.mat_T.dense(), sys.mat_A.dense(), td.coupling_W, sys.rhs_S);
    worst_compact = std::max(worst_compact, rel_diff(fast, ref.v));
  }

  double worst_spectral = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int m_prime = std::uniform_int_distribution<int>(3, 10)(rng);
    const int n_time = std::uniform_int_distribution<int>(0, 6)(rng);
    const SmoothingMap map(0.0, 1.0, pick_q(rng));
    const TemporalDiscretization td = assemble_W(pick_gamma(rng), map, collocation_nodes(n_time));
    const SpectralBasis basis(m_prime, 1.0);
    const double k = pick_k(rng);
    const Matrix h = random_matrix(basis.size(), td.size(), rng);
    const Matrix g = random_matrix(basis.size(), td.size(), rng);
    const Matrix fast = spectral_mode_solve(basis, td.coupling_W, k, h, g, td.jacobians);
    // Pi V + K V W^T = H + G W^T, i.e. T = Pi, A = -K I.
    Matrix pi(basis.size(), basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) pi(i, i) = basis.mass_eigs()[i];
    const Matrix a = (-k) * Matrix::identity(basis.size());
    const Matrix s = h + g * td.coupling_W.transposed();
    const auto ref = oracle::kronecker_solve(pi, a, td.coupling_W, s);
    worst_spectral = std::max(worst_spectral, rel_diff(fast, ref.v));
  }
  r.seconds = seconds_since(start);
  r.passed = worst_compact <= 1e-11 && worst_spectral <= 1e-11;
  r.detail = "max rel diff compact " + sci(worst_compact) + ", spectral " + sci(worst_spectral);
  budget(r, 30.0);
  return r;
}

CriterionResult c9() {
  CriterionResult r{9, "Fourier-like basis invariants", true, {}, 0.0};
  const auto start = Clock::now();
  double worst = 0.0;
  for (int m_prime : {8, 16, 64}) {
    const SpectralBasis basis(m_prime, 1.0);
    const QuadratureRule& rule = gauss_legendre(m_prime + 8);
    const std::size_t dim = basis.size();
    Matrix zv(rule.size(), dim);
    Matrix dv(rule.size(), dim);
    for (std::size_t p = 0; p < rule.size(); ++p) {
      const double x = 0.5 * (rule.nodes[p] + 1.0);
      for (std::size_t k = 0; k < dim; ++k) {
        zv(p, k) = basis.zeta(k, x);
        dv(p, k) = basis.zeta_deriv(k, x);
      }
    }
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        double mass = 0.0;
        double stiff = 0.0;
        for (std::size_t p = 0; p < rule.size(); ++p) {
          mass += 0.5 * rule.weights[p] * zv(p, i) * zv(p, j);
          stiff += 0.5 * rule.weights[p] * dv(p, i) * dv(p, j);
        }
        const double mass_ref = i == j ? basis.mass_eigs()[i] : 0.0;
        const double stiff_ref = i == j ? 1.0 : 0.0;
        worst = std::max({worst, std::abs(mass - mass_ref), std::abs(stiff - stiff_ref)});
      }
    }
  }
  r.seconds = seconds_since(start);
  r.passed = worst <= 1e-10;
  r.detail = "max deviation " + sci(worst) + " over M' in {8,16,64}";
  budget(r, 10.0);
  return r;
}

CriterionResult c10() {
  CriterionResult r{10, "physical simulation sanity", true, {}, 0.0};
  const auto start = Clock::now();
  std::vector<SolutionField> runs;
  std::ostringstream d;
  for (double gamma : {0.1, 0.5, 0.9}) {
    PhysicalConfig cfg;
    cfg.gamma = gamma;
    SolutionField f = run_physical(cfg);
    bool finite = true;
    bool zero_edges = true;
    const std::size_t last_x = f.x_grid.size() - 1;
    for (std::size_t n = 0; n < f.t_grid.size(); ++n) {
      for (std::size_t k = 0; k <= last_x; ++k) finite = finite && std::isfinite(f.values(k, n));
      zero_edges = zero_edges && f.values(0, n) == 0.0 && f.values(last_x, n) == 0.0;
    }
    // Last column is the latest computed time.
    double peak = 0.0;
    for (std::size_t k = 0; k <= last_x; ++k) peak = std::max(peak, f.values(k, f.t_grid.size() - 1));
    r.passed = r.passed && finite && zero_edges && peak < 1.0;
    d << (runs.empty() ? "" : "; ") << "gamma=" << gamma << " peak(t=" << fix(f.t_grid.back(), 4)
      << ")=" << fix(peak, 4) << (finite ? "" : " non-finite") << (zero_edges ? "" : " nonzero boundary");
    runs.push_back(std::move(f));
  }
  for (std::size_t a = 0; a < runs.size(); ++a)
    for (std::size_t b = a + 1; b < runs.size(); ++b)
      r.passed = r.passed && (runs[a].values - runs[b].values).max_abs() > 0.0;
  r.seconds = seconds_since(start);
  r.detail = d.str();
  budget(r, 5.0);
  return r;
}

} // namespace

CriterionResult run_criterion(int id) {
  static const std::function<CriterionResult()> table[] = {c1, c2, c3, c4, c5, c6, c7, c8, c9, c10};
  if (id < 1 || id > kCriterionCount)
    throw ConfigError("criterion id must be in [1, " + std::to_string(kCriterionCount) + "]");
  try {
    return table[id - 1]();
  } catch (const std::exception& e) {
    return {id, "criterion " + std::to_string(id), false, std::string("threw: ") + e.what(), 0.0};
  }
}

std::vector<CriterionResult> run_acceptance() {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id));
  return out;
}

std::string format_result(const CriterionResult& r) {
  char head[96];
  std::snprintf(head, sizeof(head), "%s %2d  ", r.passed ? "PASS" : "FAIL", r.id);
  return std::string(head) + r.name + ": " + r.detail + " [" + fix(r.seconds, 2) + " s]";
}

} // namespace subdiff
