#include <benchmark/benchmark.h>

#include "helmholtz/execution.hpp"
#include "helmholtz/reverse.hpp"
#include "helmholtz/three_ball.hpp"

using namespace helmholtz;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) ? Exec::parallel : Exec::serial; }

void BM_growth_fit(benchmark::State& state) {
  std::vector<double> ks;
  for (double kr = 10.0; kr <= 80.0; kr += 10.0) ks.push_back(kr / 0.3);
  for (auto _ : state) {
    const GrowthFit fit = growth_fit(-1.0, 0.3, 1.0, ks, MPolicy::free_search, exec_of(state));
    benchmark::DoNotOptimize(fit.slope);
  }
  state.SetLabel(state.range(0) ? "parallel" : "serial");
}

void BM_k_sweep(benchmark::State& state) {
  std::vector<double> ks;
  for (int k = 1; k <= 16; ++k) ks.push_back(k);
  ReverseOptions opts;
  opts.exec = exec_of(state);
  for (auto _ : state) {
    const KSweep s = k_sweep(0.0, 1.0, 2.0, ks, opts);
    benchmark::DoNotOptimize(s.reports.data());
  }
  state.SetLabel(state.range(0) ? "parallel" : "serial");
}

void BM_lemma_family(benchmark::State& state) {
  std::vector<double> orders;
  for (int m = 5; m <= 300; ++m) orders.push_back(m);
  for (auto _ : state) {
    const auto reps = lemma_ratio_family(orders, 5.0 / 6.0, 11.0 / 12.0, exec_of(state));
    benchmark::DoNotOptimize(reps.data());
  }
  state.SetLabel(state.range(0) ? "parallel" : "serial");
}

}  // namespace

BENCHMARK(BM_growth_fit)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_k_sweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_lemma_family)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

int main(int argc, char** argv) {
  configure_threads_from_env();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
