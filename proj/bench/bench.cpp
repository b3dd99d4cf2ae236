#include <benchmark/benchmark.h>

#include "expeq/search.hpp"
#include "reference.hpp"

using namespace expeq;

static void BM_enumerate(benchmark::State& st) {
  auto t = build_triple(2, 6, 38);
  const int workers = static_cast<int>(st.range(1));
  for (auto _ : st)
    benchmark::DoNotOptimize(enumerate_solutions(t, static_cast<unsigned>(st.range(0)), workers));
}
BENCHMARK(BM_enumerate)->ArgsProduct({{256, 1024}, {1, 2, 4}})->Unit(benchmark::kMillisecond);

static void BM_enumerate_reference(benchmark::State& st) {
  for (auto _ : st)
    benchmark::DoNotOptimize(ref::enumerate(2, 6, 38, static_cast<unsigned>(st.range(0))));
}
BENCHMARK(BM_enumerate_reference)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_direct_search(benchmark::State& st) {
  DirectBounds b{10, 10, static_cast<std::uint64_t>(st.range(0)), 5};
  SearchOptions opt;
  opt.workers = static_cast<int>(st.range(1));
  for (auto _ : st) benchmark::DoNotOptimize(direct_search(b, opt));
}
BENCHMARK(BM_direct_search)->ArgsProduct({{50}, {1, 2, 4}})->Unit(benchmark::kMillisecond);

static void BM_direct_search_reference(benchmark::State& st) {
  DirectBounds b{10, 10, static_cast<std::uint64_t>(st.range(0)), 5};
  for (auto _ : st) benchmark::DoNotOptimize(ref::direct_search(b));
}
BENCHMARK(BM_direct_search_reference)->Arg(50)->Unit(benchmark::kMillisecond);

static void BM_factorize(benchmark::State& st) {
  Int n = (Int(1) << 64) + 1;
  for (auto _ : st) benchmark::DoNotOptimize(factorize(n));
}
BENCHMARK(BM_factorize)->Unit(benchmark::kMillisecond);

static void BM_least_index(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(least_index(3, 2, 1000003, 0));
}
BENCHMARK(BM_least_index);

static void BM_least_index_reference(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(ref::least_index(3, 2, 1000003, 0, 1000000));
}
BENCHMARK(BM_least_index_reference);

BENCHMARK_MAIN();
