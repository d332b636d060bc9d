#include <benchmark/benchmark.h>

#include "p1nc/p1nc.hpp"

namespace {

using namespace p1nc;

SquareMesh unit_mesh(int n) { return SquareMesh::rectangular(n, n, 1.0 / n); }

void BM_AssembleStiffness(benchmark::State& state) {
  const auto mesh = unit_mesh(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(assemble_stiffness(mesh, SquareColor::Red));
    benchmark::DoNotOptimize(assemble_stiffness(mesh, SquareColor::Black));
  }
}
BENCHMARK(BM_AssembleStiffness)->Arg(32)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_LoadMoments(benchmark::State& state) {
  const auto mesh = unit_mesh(static_cast<int>(state.range(0)));
  const auto f = benchmark_case().forcing;
  for (auto _ : state) benchmark::DoNotOptimize(LoadMoments(mesh, f, 3));
}
BENCHMARK(BM_LoadMoments)->Arg(32)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void solve_bench(benchmark::State& state, SolverMethod method) {
  const auto mesh = unit_mesh(static_cast<int>(state.range(0)));
  const LoadMoments moments(mesh, benchmark_case().forcing, 3);
  SolverConfig config;
  config.method = method;
  for (auto _ : state) benchmark::DoNotOptimize(solve_velocity(moments, config));
}

void BM_SolveCg(benchmark::State& state) { solve_bench(state, SolverMethod::ConjugateGradient); }
BENCHMARK(BM_SolveCg)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_SolveSparse(benchmark::State& state) { solve_bench(state, SolverMethod::SparseCholesky); }
BENCHMARK(BM_SolveSparse)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_RecoverPressure(benchmark::State& state) {
  const auto mesh = unit_mesh(static_cast<int>(state.range(0)));
  const LoadMoments moments(mesh, benchmark_case().forcing, 3);
  const auto u = solve_velocity(moments);
  for (auto _ : state) benchmark::DoNotOptimize(recover_pressure(u.velocity, moments));
}
BENCHMARK(BM_RecoverPressure)->Arg(32)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
