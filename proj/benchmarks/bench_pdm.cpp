#include <benchmark/benchmark.h>

#include <cmath>

#include "pdm/effective_potential.hpp"
#include "pdm/morse1d.hpp"
#include "pdm/oracle.hpp"
#include "pdm/spectrum2d.hpp"

namespace {

using namespace pdm;

void BM_FindRoots(benchmark::State& state) {
  const Model model = Model::paper_example();
  const EnergyWindow w = energy_window(model);
  const auto variant = state.range(0) ? Variant::kPaperPrinted : Variant::kFirstPrinciples;
  for (auto _ : state) benchmark::DoNotOptimize(find_roots(model, variant, 1, 2, w));
}
BENCHMARK(BM_FindRoots)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

void BM_EnumerateSpectrum(benchmark::State& state) {
  const Model model = Model::paper_example();
  const EnergyWindow w = energy_window(model);
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_spectrum(model, Variant::kFirstPrinciples, w,
                                                static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_EnumerateSpectrum)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_EnergyWindow(benchmark::State& state) {
  const Model model = Model::paper_example();
  for (auto _ : state) benchmark::DoNotOptimize(energy_window(model));
}
BENCHMARK(BM_EnergyWindow)->Unit(benchmark::kMillisecond);

void BM_Normalize1D(benchmark::State& state) {
  const MorseChannel ch{-2.0, 0.25, 1.0};
  for (auto _ : state) {
    Bound1D s = energy_1d(ch, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(normalize_1d(ch, s, {}));
  }
}
BENCHMARK(BM_Normalize1D)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

void BM_FdMorseLevels(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(fd_morse_levels(-2.0, 0.25, 1.0));
}
BENCHMARK(BM_FdMorseLevels)->Unit(benchmark::kMillisecond);

void BM_FdEigen2DLanczos(benchmark::State& state) {
  const Model model = Model::paper_example();
  const Grid2D grid = oracle_grid(model, energy_window(model), static_cast<int>(state.range(0)));
  const double s = 2.0 / (model.hbar() * model.hbar());
  const Potential2D u = [&](double x, double y) { return s * ueff_at(model, 0.0, x, y); };
  for (auto _ : state) benchmark::DoNotOptimize(fd_eigen_2d(u, grid, 3));
}
BENCHMARK(BM_FdEigen2DLanczos)->Arg(48)->Arg(96)->Unit(benchmark::kMillisecond);

void BM_OracleEnergy2D(benchmark::State& state) {
  const Model model = Model::paper_example();
  const EnergyWindow w = energy_window(model);
  const Grid2D grid = oracle_grid(model, w, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(oracle_energy_2d(model, 0, 0, w, grid));
}
BENCHMARK(BM_OracleEnergy2D)->Arg(96)->Arg(192)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
