#include <benchmark/benchmark.h>

#include "mlab/contour.hpp"
#include "mlab/poincare.hpp"
#include "mlab/sweep.hpp"

using namespace mlab;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) == 0 ? Exec::Serial : Exec::Parallel; }

void label(benchmark::State& state) { state.SetLabel(state.range(0) == 0 ? "serial" : "openmp"); }

void BM_QuadratureSweep(benchmark::State& state) {
  const ForcedPendulum sys(1.0, 1.0, 1.0);
  const Resonance r = *solve_resonance(Family::Inner, 1.0, 5, 1);
  const std::vector<double> thetas = theta_grid(64);
  for (auto _ : state) benchmark::DoNotOptimize(quadrature_sweep(sys, r, thetas, exec_of(state)));
  label(state);
}

void BM_HomoclinicSweep(benchmark::State& state) {
  const ForcedPendulum sys(1.0, 1.0, 1.0);
  const std::vector<double> thetas = theta_grid(256);
  for (auto _ : state) benchmark::DoNotOptimize(homoclinic_sweep(sys, 1, thetas, PhaseConvention::OmegaT, exec_of(state)));
  label(state);
}

void BM_ContourKernels(benchmark::State& state) {
  std::vector<Resonance> rs;
  for (Family f : {Family::Inner, Family::RotatingPlus, Family::RotatingMinus}) {
    for (const Resonance& r : enumerate_resonances(f, 1.0, 0.0, 1.0, 7, 5)) rs.push_back(r);
  }
  for (auto _ : state) benchmark::DoNotOptimize(contour_kernel_sweep(rs, 0.1, exec_of(state)));
  label(state);
}

void BM_ResonanceTable(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(resonance_table(Family::RotatingPlus, 1.0, 40, 40, exec_of(state)));
  label(state);
}

void BM_SubharmonicNewton(benchmark::State& state) {
  const ForcedPendulum sys(1.0, 0.0, 1.0);
  const Resonance r = *solve_resonance(Family::Inner, 1.0, 3, 1);
  SubharmonicOptions opt;
  opt.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(find_subharmonic(sys, 1e-3, r, 1.5707963267948966, opt));
  label(state);
}

void BM_TangleProbe(benchmark::State& state) {
  const ForcedPendulum sys(10.0, 1.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(homoclinic_tangle_probe(sys, 0.01, 20.0, 16, {}, exec_of(state)));
  label(state);
}

}  // namespace

BENCHMARK(BM_QuadratureSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_HomoclinicSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ContourKernels)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ResonanceTable)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SubharmonicNewton)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_TangleProbe)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
