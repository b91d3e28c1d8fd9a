#include "lrsdp/alternating.hpp"
#include "lrsdp/bench.hpp"
#include "lrsdp/linalg.hpp"
#include "lrsdp/problem_library.hpp"
#include "lrsdp/relaxations.hpp"
#include "lrsdp/rng.hpp"
#include "lrsdp/solver.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace lrsdp;

void BM_PsdProject(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  CounterRng rng(7);
  SymMatrix m(d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i <= j; ++i) m.set(i, j, rng.next_normal());
  for (auto _ : state) {
    benchmark::DoNotOptimize(psd_project(m));
  }
}
BENCHMARK(BM_PsdProject)->Arg(16)->Arg(64)->Arg(128);

void BM_SvecRoundTrip(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  CounterRng rng(11);
  SymMatrix m(d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i <= j; ++i) m.set(i, j, rng.next_normal());
  for (auto _ : state) {
    benchmark::DoNotOptimize(smat(svec(m)));
  }
}
BENCHMARK(BM_SvecRoundTrip)->Arg(32)->Arg(128);

void BM_CompactSolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ObservedMatrix obs = generate_instance(n, n, 2, 0.1, 0.5, 3);
  for (auto _ : state) {
    ConicProgram prog =
        build_compact_lifted(encode_matrix_completion(obs, 0.0, 2, 100.0, 0.5));
    prog.finalize();
    SolverSettings settings;
    settings.epsPrimal = settings.epsDual = settings.epsGap = 1e-4;
    settings.maxIterations = 20000;
    benchmark::DoNotOptimize(solve(prog, settings));
  }
}
BENCHMARK(BM_CompactSolve)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_ReducedSolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ObservedMatrix obs = generate_instance(n, n, 2, 0.1, 0.5, 3);
  for (auto _ : state) {
    ConicProgram prog = build_mc_reduced(obs, 0.0, 2, 100.0, 0.5);
    prog.finalize();
    SolverSettings settings;
    settings.epsPrimal = settings.epsDual = settings.epsGap = 1e-4;
    settings.maxIterations = 20000;
    benchmark::DoNotOptimize(solve(prog, settings));
  }
}
BENCHMARK(BM_ReducedSolve)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_AlternatingMin(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ObservedMatrix obs = generate_instance(n, n, 2, 0.1, 0.5, 5);
  AMSettings am;
  am.rank = 2;
  am.gamma = 100.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(alternating_minimization(obs, am, 0.5));
  }
}
BENCHMARK(BM_AlternatingMin)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
