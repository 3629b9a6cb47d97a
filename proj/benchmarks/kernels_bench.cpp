#include <benchmark/benchmark.h>

#include "rademacher/blocks.hpp"
#include "rademacher/distribution.hpp"
#include "rademacher/oracle.hpp"

using namespace rademacher;

static void BM_BinomialTree(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(binomial(n, static_cast<std::int64_t>(n / 2)));
}
BENCHMARK(BM_BinomialTree)->RangeMultiplier(4)->Range(64, 16384);

static void BM_BinomialRunningProduct(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(binomial_running_product(n, static_cast<std::int64_t>(n / 2)));
}
BENCHMARK(BM_BinomialRunningProduct)->RangeMultiplier(4)->Range(64, 16384);

static void BM_WalkerDiagonal(benchmark::State& state) {
  const auto steps = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    BinomialWalker w(0, 0);
    for (std::uint64_t n = 1; n <= steps; ++n) w.step(n % 2 == 0);
    benchmark::DoNotOptimize(w.value());
  }
}
BENCHMARK(BM_WalkerDiagonal)->Arg(1000)->Arg(4000);

static void BM_PascalRow(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(pascal_row(n));
}
BENCHMARK(BM_PascalRow)->Arg(256)->Arg(2048);

static void BM_CentralProb(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(central_prob(n));
}
BENCHMARK(BM_CentralProb)->RangeMultiplier(10)->Range(100, 100000);

static void BM_RecursivePn(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(recursive_pn(n));
}
BENCHMARK(BM_RecursivePn)->Arg(500)->Arg(2000);

static void BM_DeltaSequence(benchmark::State& state) {
  const auto k = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(delta_sequence(k));
}
BENCHMARK(BM_DeltaSequence)->Arg(50)->Arg(300);

static void BM_Enumerate(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(oracle::enumerate_counts(n));
}
BENCHMARK(BM_Enumerate)->Arg(16)->Arg(20);

static void BM_Convolve(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(oracle::convolve_counts(n));
}
BENCHMARK(BM_Convolve)->Arg(100)->Arg(500);
BENCHMARK_MAIN();
