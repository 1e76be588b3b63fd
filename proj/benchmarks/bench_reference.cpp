#include <benchmark/benchmark.h>

#include <vector>

#include "nlscheck/fft.hpp"
#include "nlscheck/reference.hpp"
#include "nlscheck/verify.hpp"

namespace {

void BM_Fft(benchmark::State& state) {
  std::vector<nlscheck::Complex> data(static_cast<std::size_t>(state.range(0)), 1.0);
  for (auto _ : state) {
    nlscheck::fft(data, nlscheck::FftDirection::Forward);
    benchmark::DoNotOptimize(data.data());
  }
}
BENCHMARK(BM_Fft)->RangeMultiplier(4)->Range(64, 4096);

// 100 split steps of the soliton.
void BM_SplitStep(benchmark::State& state) {
  nlscheck::SpectralGrid grid{-40.0, 40.0, static_cast<std::size_t>(state.range(0)), 1e-3};
  const auto soliton = nlscheck::soliton_field(1.0);
  std::vector<nlscheck::Complex> init;
  for (double x : grid.points()) init.push_back(soliton.eval(x, 0.0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(nlscheck::split_step_evolve(init, 1.0, 2.0, grid, 100));
  }
}
BENCHMARK(BM_SplitStep)->Arg(1024)->Arg(2048)->Unit(benchmark::kMillisecond);

}  // namespace
