// Serial reference against the OpenMP path for the two hot loops: pole
// refinement and grid evaluation. Run with OMP_NUM_THREADS set as needed.

#include <benchmark/benchmark.h>

#include "fracrod/config.hpp"
#include "fracrod/grid.hpp"
#include "fracrod/poles.hpp"

using namespace fracrod;

namespace {

const MaterialParams kParams{0.045, 0.5};

const PoleSet& poles() {
  static const PoleSet set = build_pole_set(400, kParams);
  return set;
}

void BM_PoleSet(benchmark::State& state) {
  const auto exec = state.range(0) ? Execution::parallel : Execution::serial;
  for (auto _ : state) benchmark::DoNotOptimize(build_pole_set(400, kParams, {}, exec));
}

void BM_Grid(benchmark::State& state) {
  const auto exec = state.range(0) ? Execution::parallel : Execution::serial;
  const SolverConfig cfg;
  const ForcingSpec forcing;
  const std::vector<double> xs{0.25, 0.5, 0.75};
  const std::vector<double> ts = linspace(1.0, 10.0, 16);
  const auto kind = state.range(1) ? FieldKind::sigma_H : FieldKind::u_H;
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_grid(kind, xs, ts, forcing, poles(), cfg, exec));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(xs.size() * ts.size()));
}

} // namespace

BENCHMARK(BM_PoleSet)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Grid)->ArgNames({"parallel", "stress"})->ArgsProduct({{0, 1}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
