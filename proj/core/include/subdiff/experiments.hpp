#pragma once

#include "subdiff/problem.hpp"
#include "subdiff/spectral.hpp"
#include "subdiff/temporal.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace subdiff {

enum class Scheme { Compact, Spectral };
enum class ExampleKind { SinX, SinPiX, Physical };

std::string to_string(Scheme s);
/// AllNodes is the max over every sampled (x, t_n). FinalTime restricts the
/// max to the last collocation time.
enum class ErrorMetric { AllNodes, FinalTime };

std::string to_string(Scheme s);
std::string to_string(ExampleKind e);
std::string to_string(NodeFamily f);
std::string to_string(ErrorMetric m);
/// Throws ConfigError for unknown names.
Scheme parse_scheme(const std::string& name);
ExampleKind parse_example(const std::string& name);
NodeFamily parse_node_family(const std::string& name);
ErrorMetric parse_metric(const std::string& name);

/// Points used to sample spectral solutions in x.
inline constexpr int kSpectralSamplePoints = 1001;

/// max |numeric - exact| over the solution grid (t = 0 is never on it).
double max_error(const SolutionField& sol, const SpaceTimeFn& exact,
                 ErrorMetric metric = ErrorMetric::AllNodes);

/// Samples on a uniform kSpectralSamplePoints grid at every node time.
double max_error(const SpectralSolution& sol, const SpaceTimeFn& exact,
                 ErrorMetric metric = ErrorMetric::AllNodes);

/// log(err_coarse / err_fine) / log(h_ratio); empty if an error is not
/// positive or h_ratio <= 1.
std::optional<double> observed_order(double err_coarse, double err_fine, double h_ratio);

struct SweepConfig {
  Scheme scheme = Scheme::Compact;
  ExampleKind example = ExampleKind::SinX;
  double gamma = 0.5;
  double c = 1.0;
  std::vector<int> q_list;
  std::vector<int> n_list;
  std::vector<int> m_list;
  NodeFamily nodes = NodeFamily::LegendreGauss;
  ErrorMetric metric = ErrorMetric::AllNodes;
  std::string output_path;
};

/// Throws ConfigError on empty lists or out-of-range values.
void validate(const SweepConfig& cfg);

struct SweepRow {
  Scheme scheme = Scheme::Compact;
  int q = 1;
  double gamma = 0.0;
  double c = 0.0;
  int n_time = 0;
  int m_space = 0;
  /// NaN when the cell failed; see `error`.
  double max_error = 0.0;
  std::optional<double> order;
  double runtime_ms = 0.0;
  std::string error;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

/// Runs q_list x n_list x m_list in that nesting order. The order column is
/// filled along M when m_list has several values, otherwise along N. Stored
/// numbers are already rounded to their CSV representation. A cell that
/// fails yields a row with NaN error and the message in `error`; the sweep
/// continues.
std::vector<SweepRow> run_sweep(const SweepConfig& cfg);

inline constexpr const char* kSweepCsvHeader = "scheme,q,gamma,c,N,M,max_error,order,runtime_ms";

void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows);
/// Throws ConfigError on malformed input.
std::vector<SweepRow> parse_sweep_csv(std::istream& is);

struct PhysicalConfig {
  double gamma = 0.5;
  int n_time = 20;
  int m_space = 20;
  int q = 2;
  std::string output_path;
};

/// Compact solve of the hat-initial-data problem. Column 0 of the result is
/// t = 0 filled from phi; the remaining columns are the collocation times.
SolutionField run_physical(const PhysicalConfig& cfg);

inline constexpr const char* kFieldCsvHeader = "x,t,u";

void write_field_csv(std::ostream& os, const SolutionField& field);

} // namespace subdiff
