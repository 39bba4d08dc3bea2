#include <benchmark/benchmark.h>

#include "optomag/identify.hpp"
#include "optomag/scattering.hpp"
#include "optomag/texture.hpp"
#include "optomag/walker.hpp"

using namespace optomag;

namespace {

const MaterialConfig kConfig{};
const WGMLadderConfig kLadder{};

void BM_SolveWalkerModes(benchmark::State& state) {
  const int n = int(state.range(0));
  for (auto _ : state) {
    for (int m = -n; m <= n; ++m)
      benchmark::DoNotOptimize(solve_walker_modes(n, m, kConfig));
  }
}
BENCHMARK(BM_SolveWalkerModes)->DenseRange(1, 6);

void BM_WalkerCatalog(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(walker_catalog(kConfig, int(state.range(0))));
}
BENCHMARK(BM_WalkerCatalog)->Arg(4)->Arg(6);

void BM_ComputeTexture(benchmark::State& state) {
  const auto sol = solve_walker_mode({3, -1, 1}, kConfig);
  for (auto _ : state)
    benchmark::DoNotOptimize(compute_texture(sol, kConfig, int(state.range(0))));
}
BENCHMARK(BM_ComputeTexture)->Arg(21)->Arg(41);

void BM_WindingNumber(benchmark::State& state) {
  const auto tex =
      compute_texture(solve_walker_mode({3, -1, 1}, kConfig), kConfig, 25);
  for (auto _ : state) benchmark::DoNotOptimize(winding_number(tex, 0.5));
}
BENCHMARK(BM_WindingNumber);

void BM_BlsSpectrum(benchmark::State& state) {
  const auto sol = solve_walker_mode({1, 1, 0}, kConfig);
  std::vector<double> drive;
  const int pts = int(state.range(0));
  for (int i = 0; i < pts; ++i)
    drive.push_back(sol.frequency_ghz - 0.01 + 0.02 * i / (pts - 1));
  for (auto _ : state)
    benchmark::DoNotOptimize(bls_spectrum(4835, sol, kLadder, drive, 0.002));
}
BENCHMARK(BM_BlsSpectrum)->Arg(201)->Arg(2001);

void BM_AssignModesTracked(benchmark::State& state) {
  std::vector<FMRTrace> traces;
  const auto catalog = walker_catalog(kConfig, 3);
  for (const double kittel : {6.9, 7.0, 7.1, 7.2, 7.3}) {
    FMRTrace trace;
    trace.kittel_ghz = kittel;
    for (const auto& e : catalog)
      trace.dips_ghz.push_back(kittel + e.relative_frequency_ghz);
    traces.push_back(trace);
  }
  for (auto _ : state)
    benchmark::DoNotOptimize(assign_modes_tracked(traces, kConfig, 3));
}
BENCHMARK(BM_AssignModesTracked);

}  // namespace

BENCHMARK_MAIN();
