// Serial reference against OpenMP kernels. Both paths return identical
// results; only the wall time should differ.

#include <benchmark/benchmark.h>

#include <random>

#include "normlab/attainment.hpp"
#include "normlab/lp_space.hpp"
#include "normlab/norm_estimation.hpp"

using namespace normlab;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) == 0 ? Exec::Serial : Exec::Parallel; }

void label(benchmark::State& state) { state.SetLabel(state.range(0) == 0 ? "serial" : "parallel"); }

Matrix random_matrix(std::size_t n) {
  std::mt19937_64 rng(kDefaultSeed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = u(rng);
  return a;
}

void BM_BoydRestarts(benchmark::State& state) {
  const Matrix a = random_matrix(static_cast<std::size_t>(state.range(1)));
  SolverConfig cfg;
  cfg.exec = exec_of(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(boyd_power_iteration(a, Exponent::domain(3.0), Exponent::range(1.5), cfg).value);
  }
  label(state);
}
BENCHMARK(BM_BoydRestarts)->ArgsProduct({{0, 1}, {16, 64}})->Unit(benchmark::kMillisecond);

void BM_ScalarInequalityGrid(benchmark::State& state) {
  const SampleGrid grid;
  for (auto _ : state) {
    benchmark::DoNotOptimize(scalar_ineq_constant(3.0, 0.1, grid, exec_of(state)).c_epsilon);
  }
  label(state);
}
BENCHMARK(BM_ScalarInequalityGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_WeakLimit(benchmark::State& state) {
  const auto fam = SequenceFamily::two_spike(0.6, 0.8, Exponent::domain(2.0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(weak_limit_estimate(fam, 20000, 1e-4, exec_of(state)).max_oscillation);
  }
  label(state);
}
BENCHMARK(BM_WeakLimit)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_DenseSweep(benchmark::State& state) {
  const auto t = OperatorSpec::dense(random_matrix(48), Exponent::domain(2.0), Exponent::range(2.0));
  const std::vector<std::size_t> dims{6, 12, 24, 48};
  SolverConfig cfg;
  cfg.exec = exec_of(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sweep_maximizing(t, dims, cfg).extrapolated_sup);
  }
  label(state);
}
BENCHMARK(BM_DenseSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
