// subdiff: convergence sweeps, field dumps and the acceptance suite.
//
// Exit status: 0 success, 1 configuration error, 2 numerical failure (or a
// failed acceptance criterion under `verify`).

#include "subdiff/acceptance.hpp"
#include "subdiff/error.hpp"
#include "subdiff/experiments.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;

// Opens --out, or falls back to stdout when it is empty.
class Output {
public:
  explicit Output(const std::string& path) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw subdiff::ConfigError("cannot open output file '" + path + "'");
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
  std::unique_ptr<std::ofstream> file_;
};

int run_sweep_cmd(const subdiff::SweepConfig& cfg) {
  const auto rows = subdiff::run_sweep(cfg);
  Output out(cfg.output_path);
  subdiff::write_sweep_csv(out.stream(), rows);
  for (const auto& r : rows)
    if (!r.error.empty()) std::cerr << "q=" << r.q << " N=" << r.n_time << " M=" << r.m_space << ": " << r.error << '\n';
  return kExitOk;
}

int run_physical_cmd(const subdiff::PhysicalConfig& cfg) {
  const auto field = subdiff::run_physical(cfg);
  Output out(cfg.output_path);
  subdiff::write_field_csv(out.stream(), field);
  return kExitOk;
}

int run_verify_cmd(const std::vector<int>& only) {
  bool all = true;
  auto report = [&](const subdiff::CriterionResult& r) {
    std::cout << subdiff::format_result(r) << std::endl;
    all = all && r.passed;
  };
  if (only.empty()) {
    for (int id = 1; id <= subdiff::kCriterionCount; ++id) report(subdiff::run_criterion(id));
  } else {
    for (int id : only) report(subdiff::run_criterion(id));
  }
  return all ? kExitOk : kExitNumerical;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Smoothed Nystrom solvers for time-fractional sub-diffusion"};
  app.require_subcommand(1);

  subdiff::SweepConfig sweep;
  std::string scheme = "compact", example = "sin_x", nodes = "legendre", metric = "all";
  auto* sc = app.add_subcommand("sweep", "error table over q x N x M for a manufactured solution");
  sc->add_option("--scheme", scheme, "compact | spectral")->capture_default_str();
  sc->add_option("--example", example, "sin_x | sin_pi_x")->capture_default_str();
  sc->add_option("--gamma", sweep.gamma, "fractional order in (0, 1)")->required();
  sc->add_option("--c", sweep.c, "solution exponent: u = t^(c+gamma) ...")->required();
  sc->add_option("--q", sweep.q_list, "smoothing degrees, comma separated")->delimiter(',')->required();
  sc->add_option("--n-list", sweep.n_list, "temporal degrees N")->delimiter(',')->required();
  sc->add_option("--m-list", sweep.m_list, "spatial sizes M (or M' for spectral)")->delimiter(',')->required();
  sc->add_option("--nodes", nodes, "legendre | chebyshev | radau")->capture_default_str();
  sc->add_option("--metric", metric, "all: every node time; final: last node time only")->capture_default_str();
  sc->add_option("--out", sweep.output_path, "CSV path (stdout if omitted)");

  subdiff::PhysicalConfig phys;
  auto* pc = app.add_subcommand("physical", "field dump of the hat-initial-data problem");
  pc->add_option("--gamma", phys.gamma, "fractional order in (0, 1)")->required();
  pc->add_option("--n", phys.n_time, "temporal degree N")->capture_default_str();
  pc->add_option("--m", phys.m_space, "spatial intervals M")->capture_default_str();
  pc->add_option("--q", phys.q, "smoothing degree")->capture_default_str();
  pc->add_option("--out", phys.output_path, "CSV path (stdout if omitted)");

  std::vector<int> only;
  auto* vc = app.add_subcommand("verify", "run the acceptance criteria");
  vc->add_option("--only", only, "criterion ids to run")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*sc) {
      sweep.scheme = subdiff::parse_scheme(scheme);
      sweep.example = subdiff::parse_example(example);
      sweep.nodes = subdiff::parse_node_family(nodes);
      sweep.metric = subdiff::parse_metric(metric);
      return run_sweep_cmd(sweep);
    }
    if (*pc) return run_physical_cmd(phys);
    return run_verify_cmd(only);
  } catch (const subdiff::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const subdiff::DomainError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}
