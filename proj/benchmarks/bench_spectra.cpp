#include <benchmark/benchmark.h>

#include "qes/golden.hpp"
#include "qes/norms.hpp"
#include "qes/oracle.hpp"
#include "qes/spectra.hpp"

namespace {

void BM_QesSpectrum(benchmark::State& state) {
  const auto p = qes::ModelParams::from_zeta2(static_cast<int>(state.range(0)), 0.02);
  for (auto _ : state) benchmark::DoNotOptimize(qes::qes_spectrum(p));
}
BENCHMARK(BM_QesSpectrum)->DenseRange(1, 9, 2)->Arg(16)->Arg(24);

void BM_GaugeMatrixEigs(benchmark::State& state) {
  const auto p = qes::ModelParams::from_zeta2(static_cast<int>(state.range(0)), 0.02);
  for (auto _ : state) benchmark::DoNotOptimize(qes::gauge_matrix_eigs(p));
}
BENCHMARK(BM_GaugeMatrixEigs)->DenseRange(1, 9, 2)->Arg(16)->Arg(24);

void BM_CriticalCoupling(benchmark::State& state) {
  const int M = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qes::critical_coupling(M));
}
BENCHMARK(BM_CriticalCoupling)->DenseRange(3, 9, 2)->Unit(benchmark::kMillisecond);

void BM_Weights(benchmark::State& state) {
  const auto p = qes::ModelParams::from_zeta2(static_cast<int>(state.range(0)), 0.02);
  for (auto _ : state) benchmark::DoNotOptimize(qes::weights(p));
}
BENCHMARK(BM_Weights)->Arg(3)->Arg(5)->Arg(7);

void BM_ReproduceTables(benchmark::State& state) {
  const auto cells = qes::load_golden_cells();
  for (auto _ : state)
    for (auto id : {qes::TableId::I, qes::TableId::II, qes::TableId::III})
      benchmark::DoNotOptimize(qes::reproduce_table(id, cells));
}
BENCHMARK(BM_ReproduceTables)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
