// Serial reference vs OpenMP versions of the three data-parallel kernels.

#include "fdsl/galerkin.hpp"
#include "fdsl/quadrature.hpp"
#include "fdsl/spectral.hpp"
#include "fdsl/verify.hpp"

#include <benchmark/benchmark.h>

using namespace fdsl;

namespace {

const PrecisionContext kCtx(100);

std::vector<int> indices(int count) {
  std::vector<int> ns;
  for (int n = 1; n <= count; ++n) ns.push_back(n);
  return ns;
}

void BM_SolveBatchSerial(benchmark::State& state) {
  PrecisionScope scope(kCtx);
  const ProblemSpec spec = example1_problem();
  const auto ns = indices(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_batch_serial(spec, ns, 10, kCtx));
}

void BM_SolveBatch(benchmark::State& state) {
  PrecisionScope scope(kCtx);
  const ProblemSpec spec = example1_problem();
  const auto ns = indices(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_batch(spec, ns, 10, kCtx));
}

void BM_ResidualSerial(benchmark::State& state) {
  PrecisionScope scope(kCtx);
  const ProblemSpec spec = example2_problem();
  const FDSolution sol = solve(spec, static_cast<int>(state.range(0)), 8, kCtx);
  for (auto _ : state) benchmark::DoNotOptimize(residual_norm(sol, spec, {}, false));
}

void BM_Residual(benchmark::State& state) {
  PrecisionScope scope(kCtx);
  const ProblemSpec spec = example2_problem();
  const FDSolution sol = solve(spec, static_cast<int>(state.range(0)), 8, kCtx);
  for (auto _ : state) benchmark::DoNotOptimize(residual_norm(sol, spec, {}, true));
}

void BM_GalerkinSerial(benchmark::State& state) {
  PrecisionScope scope(kCtx);
  const ProblemSpec spec = example1_problem();
  for (auto _ : state) benchmark::DoNotOptimize(galerkin_assemble_serial(spec, static_cast<int>(state.range(0))));
}

void BM_Galerkin(benchmark::State& state) {
  PrecisionScope scope(kCtx);
  const ProblemSpec spec = example1_problem();
  for (auto _ : state) benchmark::DoNotOptimize(galerkin_assemble(spec, static_cast<int>(state.range(0))));
}

}  // namespace

BENCHMARK(BM_SolveBatchSerial)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SolveBatch)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ResidualSerial)->Arg(1)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Residual)->Arg(1)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GalerkinSerial)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Galerkin)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
