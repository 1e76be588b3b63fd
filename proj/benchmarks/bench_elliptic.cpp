#include <benchmark/benchmark.h>

#include "nlscheck/elliptic.hpp"
#include "nlscheck/quartic.hpp"

namespace {

void BM_WpReal(benchmark::State& state) {
  const nlscheck::EllipticInvariants inv(3.52, 1.0384);
  const double u = static_cast<double>(state.range(0)) / 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(nlscheck::wp_pair(u, inv));
}
BENCHMARK(BM_WpReal)->Arg(5)->Arg(30)->Arg(150)->Arg(1000);

void BM_WpComplex(benchmark::State& state) {
  const nlscheck::EllipticInvariants inv(-2.0, 4.5);
  const nlscheck::Complex u(0.7, 1.3);
  for (auto _ : state) benchmark::DoNotOptimize(nlscheck::wp_pair(u, inv));
}
BENCHMARK(BM_WpComplex);

void BM_WeierstrassSolution(benchmark::State& state) {
  const nlscheck::QuarticCurve r{-16.0, 8.0, -1.6, 0.13, 0.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        nlscheck::weierstrass_solution_point(r, 1.0, nlscheck::Sign::Minus, 1.0));
  }
}
BENCHMARK(BM_WeierstrassSolution);

}  // namespace
