// Serial reference vs OpenMP kernels for the row-deletion scans.

#include <benchmark/benchmark.h>

#include "rulebasis/dualizer.hpp"
#include "rulebasis/miner.hpp"
#include "rulebasis/perturb.hpp"
#include "rulebasis/synth.hpp"

namespace {

using namespace rulebasis;

BinaryTable bench_table(std::size_t rows, std::size_t cols, double density) {
  return random_table(SynthSpec{rows, cols, density, 42});
}

void BM_MineSector(benchmark::State& state) {
  const auto t = bench_table(40, 32, static_cast<double>(state.range(0)) / 10.0);
  const SectorRequest req{0, 1};
  std::size_t rules = 0;
  for (auto _ : state) {
    auto s = mine_sector(t, req);
    rules = s.size();
    benchmark::DoNotOptimize(rules);
  }
  state.counters["rules"] = static_cast<double>(rules);
}
BENCHMARK(BM_MineSector)->Arg(3)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_OrdSerial(benchmark::State& state) {
  const auto t = bench_table(40, 32, 0.5);
  const SectorRequest req{0, 1};
  const auto base = mine_sector(t, req);
  for (auto _ : state) benchmark::DoNotOptimize(serial::ord_scan(t, req, base));
}
BENCHMARK(BM_OrdSerial)->Unit(benchmark::kMillisecond);

void BM_OrdParallel(benchmark::State& state) {
  const auto t = bench_table(40, 32, 0.5);
  const SectorRequest req{0, 1};
  const auto base = mine_sector(t, req);
  const auto workers = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ord_scan(t, req, base, workers));
}
BENCHMARK(BM_OrdParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

RunPlan bench_plan(const BinaryTable& t) { return RunPlan{t.row_ids(), 3, 32, 7}; }

void BM_MrdSerial(benchmark::State& state) {
  const auto t = bench_table(40, 32, 0.5);
  const SectorRequest req{0, 1};
  const auto plan = bench_plan(t);
  for (auto _ : state) benchmark::DoNotOptimize(serial::mrd_run(t, req, plan));
}
BENCHMARK(BM_MrdSerial)->Unit(benchmark::kMillisecond);

void BM_MrdParallel(benchmark::State& state) {
  const auto t = bench_table(40, 32, 0.5);
  const SectorRequest req{0, 1};
  const auto plan = bench_plan(t);
  const auto workers = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mrd_run(t, req, plan, workers));
}
BENCHMARK(BM_MrdParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
