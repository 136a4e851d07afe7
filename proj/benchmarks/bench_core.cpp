#include <benchmark/benchmark.h>

#include "dzeros/expected_zeros.hpp"
#include "dzeros/general_dirichlet.hpp"
#include "dzeros/simulator.hpp"
#include "dzeros/zeta.hpp"

namespace {

void BM_ZetaJet(benchmark::State& state) {
  const double s = 1.0 + 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(dzeros::zeta_jet(s));
}
BENCHMARK(BM_ZetaJet)->Arg(1)->Arg(100)->Arg(100000);

void BM_KacIntegrand(benchmark::State& state) {
  double sigma = 0.5 + 1e-6;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dzeros::kac_integrand(sigma));
    sigma = sigma < 2.0 ? sigma * 1.01 : 0.5 + 1e-6;
  }
}
BENCHMARK(BM_KacIntegrand);

void BM_ExpectedZeroCount(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(dzeros::expected_zero_count({0.5 + 1e-8}));
}
BENCHMARK(BM_ExpectedZeroCount)->Unit(benchmark::kMillisecond);

void BM_PrimeIntegrand(benchmark::State& state) {
  const dzeros::FrequencySet primes = dzeros::FrequencySet::primes();
  for (auto _ : state) benchmark::DoNotOptimize(dzeros::kac_integrand_alpha(0.6, primes));
}
BENCHMARK(BM_PrimeIntegrand)->Unit(benchmark::kMicrosecond);

void BM_PathSample(benchmark::State& state) {
  const dzeros::PathSampler sampler({0.6, 1.0}, dzeros::kDefaultExactHead, dzeros::TailModel::exact);
  std::uint64_t trial = 0;
  for (auto _ : state) {
    dzeros::TrialEngine engine = dzeros::trial_engine(1, trial++);
    benchmark::DoNotOptimize(sampler.sample(engine));
  }
}
BENCHMARK(BM_PathSample)->Unit(benchmark::kMicrosecond);

void BM_SimulateTrial(benchmark::State& state) {
  dzeros::SimulationConfig config;
  config.trials = 16;
  for (auto _ : state) benchmark::DoNotOptimize(dzeros::simulate(config));
  state.SetItemsProcessed(state.iterations() * 16);
}
BENCHMARK(BM_SimulateTrial)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
