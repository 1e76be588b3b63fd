#include <benchmark/benchmark.h>

#include "nlscheck/ansatz.hpp"
#include "nlscheck/verify.hpp"

namespace {

void BM_ResidualP(benchmark::State& state) {
  const auto p = nlscheck::paper_params();
  for (auto _ : state) benchmark::DoNotOptimize(nlscheck::residual_P(p, 1.0, 1.0));
}
BENCHMARK(BM_ResidualP);

void BM_EvaluateReport(benchmark::State& state) {
  const auto p = nlscheck::paper_params();
  for (auto _ : state) benchmark::DoNotOptimize(nlscheck::evaluate_report(p, 0.7, 0.9));
}
BENCHMARK(BM_EvaluateReport);

void BM_FieldA(benchmark::State& state) {
  const auto p = nlscheck::paper_params();
  for (auto _ : state) benchmark::DoNotOptimize(nlscheck::field_A(p, 1.0, 1.0));
}
BENCHMARK(BM_FieldA);

}  // namespace
