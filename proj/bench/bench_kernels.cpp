// Serial reference loops vs their OpenMP counterparts on identical work.

#include <vector>

#include <benchmark/benchmark.h>

#include "relay/kernels.hpp"
#include "relay/parallel.hpp"

namespace {

using namespace relay;

const HopConfig kHop = HopConfig::from_db(2, 2, 20.0, 15.0, 2);

std::vector<HopConfig> chain() {
  return {kHop, kHop, HopConfig::from_db(2, 2, 20.0)};
}

void BM_HopSamplesSerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::serial::hop_samples(
        kHop, DuplexMode::FullDuplex, kernels::SampleKind::Approximate, n, 1, 0));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_HopSamplesParallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::parallel::hop_samples(
        kHop, DuplexMode::FullDuplex, kernels::SampleKind::Approximate, n, 1, 0));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
  state.counters["workers"] = worker_count();
}

void BM_NetworkMinMiSerial(benchmark::State& state) {
  const auto hops = chain();
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::serial::network_min_mi(hops, DuplexMode::FullDuplex, n, 1));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_NetworkMinMiParallel(benchmark::State& state) {
  const auto hops = chain();
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::parallel::network_min_mi(hops, DuplexMode::FullDuplex, n, 1));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
  state.counters["workers"] = worker_count();
}

}  // namespace

BENCHMARK(BM_HopSamplesSerial)->Arg(10'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HopSamplesParallel)->Arg(10'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NetworkMinMiSerial)->Arg(10'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NetworkMinMiParallel)->Arg(10'000)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
  configure_threads_from_env();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
