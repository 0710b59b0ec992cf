#include "subdiff/experiments.hpp"

#include "subdiff/compact.hpp"
#include "subdiff/error.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace subdiff {

std::string to_string(Scheme s) { return s == Scheme::Compact ? "compact" : "spectral"; }

std::string to_string(ExampleKind e) {
  switch (e) {
  case ExampleKind::SinX: return "sin_x";
  case ExampleKind::SinPiX: return "sin_pi_x";
  case ExampleKind::Physical: return "physical";
  }
  return "?";
}

std::string to_string(NodeFamily f) {
  switch (f) {
  case NodeFamily::LegendreGauss: return "legendre";
  case NodeFamily::ChebyshevGauss: return "chebyshev";
  case NodeFamily::RightRadau: return "radau";
  }
  return "?";
}

std::string to_string(ErrorMetric m) { return m == ErrorMetric::AllNodes ? "all" : "final"; }

Scheme parse_scheme(const std::string& name) {
  if (name == "compact") return Scheme::Compact;
  if (name == "spectral") return Scheme::Spectral;
  throw ConfigError("unknown scheme '" + name + "'");
}

ExampleKind parse_example(const std::string& name) {
  if (name == "sin_x") return ExampleKind::SinX;
  if (name == "sin_pi_x") return ExampleKind::SinPiX;
  if (name == "physical") return ExampleKind::Physical;
  throw ConfigError("unknown example '" + name + "'");
}

NodeFamily parse_node_family(const std::string& name) {
  if (name == "legendre") return NodeFamily::LegendreGauss;
  if (name == "chebyshev") return NodeFamily::ChebyshevGauss;
  if (name == "radau") return NodeFamily::RightRadau;
  throw ConfigError("unknown node family '" + name + "'");
}

ErrorMetric parse_metric(const std::string& name) {
  if (name == "all") return ErrorMetric::AllNodes;
  if (name == "final") return ErrorMetric::FinalTime;
  throw ConfigError("unknown error metric '" + name + "'");
}

double max_error(const SolutionField& sol, const SpaceTimeFn& exact, ErrorMetric metric) {
  double err = 0.0;
  const std::size_t first =
      metric == ErrorMetric::FinalTime && !sol.t_grid.empty() ? sol.t_grid.size() - 1 : 0;
  for (std::size_t k = 0; k < sol.x_grid.size(); ++k)
    for (std::size_t n = first; n < sol.t_grid.size(); ++n)
      err = std::max(err, std::abs(sol.values(k, n) - exact(sol.x_grid[k], sol.t_grid[n])));
  return err;
}

double max_error(const SpectralSolution& sol, const SpaceTimeFn& exact, ErrorMetric metric) {
  const double x_len = sol.basis.x_len();
  std::vector<double> xs(kSpectralSamplePoints);
  for (int i = 0; i < kSpectralSamplePoints; ++i) xs[i] = x_len * i / (kSpectralSamplePoints - 1);
  xs.back() = x_len;
  return max_error(sample_spectral(sol, xs), exact, metric);
}

std::optional<double> observed_order(double err_coarse, double err_fine, double h_ratio) {
  if (!(err_coarse > 0.0) || !(err_fine > 0.0) || !(h_ratio > 1.0)) return std::nullopt;
  return std::log(err_coarse / err_fine) / std::log(h_ratio);
}

void validate(const SweepConfig& cfg) {
  if (cfg.q_list.empty()) throw ConfigError("q list is empty");
  if (cfg.n_list.empty()) throw ConfigError("N list is empty");
  if (cfg.m_list.empty()) throw ConfigError("M list is empty");
  if (cfg.example == ExampleKind::Physical)
    throw ConfigError("the physical example has no exact solution; use the physical command");
  if (!(cfg.gamma > 0.0 && cfg.gamma < 1.0)) throw ConfigError("gamma must lie in (0, 1)");
  if (!(cfg.c > -1.0)) throw ConfigError("c must exceed -1");
  for (int q : cfg.q_list)
    if (q < 1 || q > 6) throw ConfigError("q must be in [1, 6]");
  for (int n : cfg.n_list)
    if (n < 0 || n > kMaxTimeIntervals) throw ConfigError("N must be in [0, 256]");
  for (int m : cfg.m_list)
    if (m < 3) throw ConfigError("M must be at least 3");
}

namespace {

std::string shortest(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

std::string fixed_sig(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*e", digits - 1, v);
  return buf;
}

double round_sig(double v, int digits) { return std::stod(fixed_sig(v, digits)); }

std::string format_runtime(double ms) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", ms);
  return buf;
}

double round_runtime(double ms) { return std::stod(format_runtime(ms)); }

double solve_cell(const SweepConfig& cfg, int q, int n_time, int m_space) {
  const CaseKind kind = cfg.example == ExampleKind::SinX ? CaseKind::SinX : CaseKind::SinPiX;
  const auto [problem, mc] = manufactured_case(kind, cfg.c, cfg.gamma);
  if (cfg.scheme == Scheme::Compact)
    return max_error(compact_driver(problem, q, n_time, m_space, {cfg.nodes}), mc.exact, cfg.metric);
  return max_error(spectral_solve(problem, q, n_time, m_space, {cfg.nodes}), mc.exact, cfg.metric);
}

} // namespace

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
  validate(cfg);
  const bool along_m = cfg.m_list.size() > 1;
  const bool along_n = !along_m && cfg.n_list.size() > 1;

  std::vector<SweepRow> rows;
  for (int q : cfg.q_list) {
    for (std::size_t in = 0; in < cfg.n_list.size(); ++in) {
      for (std::size_t im = 0; im < cfg.m_list.size(); ++im) {
        SweepRow row;
        row.scheme = cfg.scheme;
        row.q = q;
        row.gamma = cfg.gamma;
        row.c = cfg.c;
        row.n_time = cfg.n_list[in];
        row.m_space = cfg.m_list[im];

        const auto start = std::chrono::steady_clock::now();
        double raw = std::numeric_limits<double>::quiet_NaN();
        try {
          raw = solve_cell(cfg, q, row.n_time, row.m_space);
        } catch (const std::exception& e) {
          row.error = e.what();
        }
        const auto stop = std::chrono::steady_clock::now();
        row.runtime_ms = round_runtime(std::chrono::duration<double, std::milli>(stop - start).count());
        row.max_error = std::isnan(raw) ? raw : round_sig(raw, 6);

        // Predecessor along the varied axis (same q and other-axis value).
        const SweepRow* prev = nullptr;
        double ratio = 0.0;
        if (along_m && im > 0) {
          prev = &rows.back();
          ratio = static_cast<double>(row.m_space) / prev->m_space;
        } else if (along_n && in > 0) {
          prev = &rows.back();
          ratio = static_cast<double>(row.n_time) / prev->n_time;
        }
        if (prev && prev->error.empty() && row.error.empty()) {
          if (auto o = observed_order(prev->max_error, row.max_error, ratio)) row.order = round_sig(*o, 6);
        }
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows) {
  os << kSweepCsvHeader << '\n';
  for (const auto& r : rows) {
    os << to_string(r.scheme) << ',' << r.q << ',' << shortest(r.gamma) << ',' << shortest(r.c) << ','
       << r.n_time << ',' << r.m_space << ',' << (std::isnan(r.max_error) ? "nan" : fixed_sig(r.max_error, 6))
       << ',' << (r.order ? fixed_sig(*r.order, 6) : "") << ',' << format_runtime(r.runtime_ms) << '\n';
  }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

template <class T>
T parse_number(const std::string& s) {
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw ConfigError("malformed number '" + s + "'");
  return v;
}

} // namespace

std::vector<SweepRow> parse_sweep_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || split_csv_line(line) != split_csv_line(kSweepCsvHeader))
    throw ConfigError("sweep CSV: missing or wrong header");
  std::vector<SweepRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 9) throw ConfigError("sweep CSV: expected 9 fields");
    SweepRow r;
    r.scheme = parse_scheme(f[0]);
    r.q = parse_number<int>(f[1]);
    r.gamma = parse_number<double>(f[2]);
    r.c = parse_number<double>(f[3]);
    r.n_time = parse_number<int>(f[4]);
    r.m_space = parse_number<int>(f[5]);
    r.max_error = f[6] == "nan" ? std::numeric_limits<double>::quiet_NaN() : parse_number<double>(f[6]);
    if (!f[7].empty()) r.order = parse_number<double>(f[7]);
    r.runtime_ms = parse_number<double>(f[8]);
    rows.push_back(std::move(r));
  }
  return rows;
}

SolutionField run_physical(const PhysicalConfig& cfg) {
  const SubdiffusionProblem problem = example3_problem(cfg.gamma);
  const SolutionField sol = compact_driver(problem, cfg.q, cfg.n_time, cfg.m_space);

  SolutionField out;
  out.x_grid = sol.x_grid;
  out.t_grid.reserve(sol.t_grid.size() + 1);
  out.t_grid.push_back(0.0);
  out.t_grid.insert(out.t_grid.end(), sol.t_grid.begin(), sol.t_grid.end());
  out.values = Matrix(sol.x_grid.size(), out.t_grid.size());
  for (std::size_t k = 0; k < sol.x_grid.size(); ++k) {
    out.values(k, 0) = problem.initial(sol.x_grid[k]);
    for (std::size_t n = 0; n < sol.t_grid.size(); ++n) out.values(k, n + 1) = sol.values(k, n);
  }
  return out;
}

void write_field_csv(std::ostream& os, const SolutionField& field) {
  os << kFieldCsvHeader << '\n';
  for (std::size_t n = 0; n < field.t_grid.size(); ++n)
    for (std::size_t k = 0; k < field.x_grid.size(); ++k)
      os << shortest(field.x_grid[k]) << ',' << shortest(field.t_grid[n]) << ','
         << shortest(field.values(k, n)) << '\n';
}

} // namespace subdiff
