#include <benchmark/benchmark.h>

#include "pdjc/dynamics.hpp"
#include "pdjc/observables.hpp"
#include "pdjc/oracle.hpp"

namespace {

using namespace pdjc;

ModelParams strong_deformation() { return ModelParams::from_detuning(1.0, 0.01, 0.01, DeformationParam(50.0)); }

void BM_WcsBuild(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(wcs_build({x, 0.0}, DeformationParam(50.0)));
  }
}
BENCHMARK(BM_WcsBuild)->Arg(1)->Arg(30)->Arg(100);

void BM_Trajectory(benchmark::State& state) {
  const ModelParams p = strong_deformation();
  const FieldState f = wcs_build({30.0, 0.0}, p.lambda);
  const auto grid = linear_grid(0.0, 2e4, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(trajectory(f, p, grid));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Trajectory)->Arg(401)->Arg(2001)->Unit(benchmark::kMillisecond);

void BM_ObservablesPerState(benchmark::State& state) {
  const ModelParams p = strong_deformation();
  const FieldState f = wcs_build({30.0, 0.0}, p.lambda);
  const JointState s = evolve_excited(f, p, 1234.0);
  const JointState init = excited_initial_state(f, p);
  for (auto _ : state) {
    benchmark::DoNotOptimize(atomic_inversion(s));
    benchmark::DoNotOptimize(fidelity(init, s));
    benchmark::DoNotOptimize(entanglement(s));
    benchmark::DoNotOptimize(mandel_q(s));
    benchmark::DoNotOptimize(squeezing(s));
  }
}
BENCHMARK(BM_ObservablesPerState);

void BM_OracleEigendecomposition(benchmark::State& state) {
  const ModelParams p = strong_deformation();
  const int n_trunc = static_cast<int>(state.range(0));
  const oracle::FullOperator h = oracle::build_hamiltonian(p, n_trunc);
  const oracle::FullOperator h0 = oracle::build_h0(p, n_trunc);
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle::NumericPropagator(h, h0));
  }
}
BENCHMARK(BM_OracleEigendecomposition)->Arg(50)->Arg(150)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
