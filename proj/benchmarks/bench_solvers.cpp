#include <benchmark/benchmark.h>

#include <shellbreak/ball.hpp>
#include <shellbreak/experiments.hpp>
#include <shellbreak/radial.hpp>
#include <shellbreak/special.hpp>
#include <shellbreak/weight.hpp>

using namespace shellbreak;

static void BM_LogGamma(benchmark::State& state) {
  double x = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(log_gamma(x));
    x = x < 1e5 ? x * 1.01 : 0.5;
  }
}
BENCHMARK(BM_LogGamma);

static void BM_IntegralV(benchmark::State& state) {
  const ProblemParams pp{3, 2.0, 0.3, static_cast<double>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(integral_V(pp));
}
BENCHMARK(BM_IntegralV)->Arg(10)->Arg(1000);

static void BM_RadialSolve(benchmark::State& state) {
  const ProblemParams pp{3, 2.0, 0.3, 40.0};
  const RadialGrid grid = build_radial_grid(pp, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(minimize_radial_quotient(pp, grid).S_rad);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RadialSolve)->RangeMultiplier(2)->Range(200, 3200)->Unit(benchmark::kMillisecond)->Complexity();

static void BM_BallSolve(benchmark::State& state) {
  const ProblemParams pp{2, 3.0, 0.0, 100.0};
  const int n_r = static_cast<int>(state.range(0));
  const AxisymGrid grid = build_axisym_grid(pp, n_r, n_r / 2);
  for (auto _ : state) benchmark::DoNotOptimize(minimize_full_quotient(pp, grid).S_full);
}
BENCHMARK(BM_BallSolve)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_SweepRow(benchmark::State& state) {
  const GridSpec grids{128, 64, 2.0};
  for (auto _ : state) benchmark::DoNotOptimize(solve_record({3, 2.0, 0.7, 80.0}, grids).S_full);
}
BENCHMARK(BM_SweepRow)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
