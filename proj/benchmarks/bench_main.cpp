#include <benchmark/benchmark.h>

#include "subdiff/compact.hpp"
#include "subdiff/problem.hpp"
#include "subdiff/quadrature.hpp"
#include "subdiff/smoothing.hpp"
#include "subdiff/spectral.hpp"
#include "subdiff/temporal.hpp"

namespace {

using namespace subdiff;

void BM_SingularWeights(benchmark::State& state) {
  const auto nodes = collocation_nodes(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(singular_weights(nodes, 0.5));
  }
}
BENCHMARK(BM_SingularWeights)->Arg(10)->Arg(20)->Arg(40);

void BM_AssembleW(benchmark::State& state) {
  const auto nodes = collocation_nodes(static_cast<int>(state.range(0)));
  const SmoothingMap map(0.0, 1.0, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(assemble_W(0.5, map, nodes));
  }
}
BENCHMARK(BM_AssembleW)->Arg(10)->Arg(20)->Arg(40);

void BM_CompactSolve(benchmark::State& state) {
  const auto [problem, mc] = manufactured_case(CaseKind::SinX, 1.9, 0.5);
  const int n_time = static_cast<int>(state.range(0));
  const int m_space = static_cast<int>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(compact_driver(problem, 2, n_time, m_space));
  }
}
BENCHMARK(BM_CompactSolve)->Args({10, 20})->Args({20, 40})->Args({40, 80})
    ->Unit(benchmark::kMillisecond);

void BM_SpectralSolve(benchmark::State& state) {
  const auto [problem, mc] = manufactured_case(CaseKind::SinPiX, 2.5, 0.5);
  const int n_time = static_cast<int>(state.range(0));
  const int m_prime = static_cast<int>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(spectral_solve(problem, 3, n_time, m_prime));
  }
}
BENCHMARK(BM_SpectralSolve)->Args({14, 16})->Args({14, 24})->Args({30, 32})
    ->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
