#include <benchmark/benchmark.h>

#include <random>

#include "fracac/riesz_operator.hpp"
#include "fracac/stepper.hpp"

namespace {

using namespace fracac;

GridSpec make_grid(int m, int dim) {
  GridSpec grid;
  grid.a = 0.0;
  grid.b = 1.0;
  grid.subintervals = m;
  grid.dim = dim;
  return grid;
}

StateField random_field(const GridSpec& grid) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  StateField f = StateField::zeros(grid);
  for (double& v : f.values) v = dist(rng);
  return f;
}

void BM_apply_dense(benchmark::State& state) {
  const GridSpec grid = make_grid(static_cast<int>(state.range(0)), 1);
  RieszOperator op(grid, 1.5, 0.1);
  const StateField v = random_field(grid);
  StateField out = StateField::zeros(grid);
  for (auto _ : state) {
    op.apply(v, out, ApplyPath::dense);
    benchmark::DoNotOptimize(out.values.data());
  }
}
BENCHMARK(BM_apply_dense)->Arg(64)->Arg(256)->Arg(1024);

void BM_apply_fft(benchmark::State& state) {
  const GridSpec grid = make_grid(static_cast<int>(state.range(0)), 1);
  RieszOperator op(grid, 1.5, 0.1);
  const StateField v = random_field(grid);
  StateField out = StateField::zeros(grid);
  for (auto _ : state) {
    op.apply(v, out, ApplyPath::fft);
    benchmark::DoNotOptimize(out.values.data());
  }
}
BENCHMARK(BM_apply_fft)->Arg(64)->Arg(256)->Arg(1024)->Arg(4096);

void BM_apply_fft_2d(benchmark::State& state) {
  const GridSpec grid = make_grid(static_cast<int>(state.range(0)), 2);
  RieszOperator op(grid, 1.5, 0.1);
  const StateField v = random_field(grid);
  StateField out = StateField::zeros(grid);
  for (auto _ : state) {
    op.apply(v, out, ApplyPath::fft);
    benchmark::DoNotOptimize(out.values.data());
  }
}
BENCHMARK(BM_apply_fft_2d)->Arg(32)->Arg(64)->Arg(128);

void BM_step_1d(benchmark::State& state) {
  const GridSpec grid = make_grid(static_cast<int>(state.range(0)), 1);
  RieszOperator op(grid, 1.5, 0.1);
  LinearSolveContext ctx(op, 0.1);
  StateField u = random_field(grid);
  for (auto _ : state) {
    u = step(ctx, u);
    benchmark::DoNotOptimize(u.values.data());
  }
}
BENCHMARK(BM_step_1d)->Arg(100)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
