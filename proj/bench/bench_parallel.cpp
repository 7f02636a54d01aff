#include <benchmark/benchmark.h>

#include "rungs/kernel.hpp"
#include "rungs/oracle.hpp"
#include "rungs/sampler.hpp"

using namespace rungs;

namespace {

const Segment& ladder_window() {
  static const Segment s = build_segment(GraphFamily::numeric(Family::Ladder, 1.0), 0, 6);
  return s;
}

void BM_enumerate_serial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(enumerate_trees(ladder_window()));
}
void BM_enumerate_parallel(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(enumerate_trees_parallel(ladder_window()));
}

void BM_fourier_serial(benchmark::State& st) {
  const KernelSpec k = build_kernel(Family::EnhancedHelix3, 1.0, 0.5);
  for (auto _ : st) benchmark::DoNotOptimize(fourier_invert(k, 3, 1 << 18));
}
void BM_fourier_parallel(benchmark::State& st) {
  const KernelSpec k = build_kernel(Family::EnhancedHelix3, 1.0, 0.5);
  for (auto _ : st) benchmark::DoNotOptimize(fourier_invert_parallel(k, 3, 1 << 18));
}

PathSampler zigzag_sampler() {
  return [](Rng& g) { return native_sample(Family::Zigzag, 1.0, 6, g); };
}
void BM_histogram_serial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(atom_histogram(zigzag_sampler(), 6, 20000, 1));
}
void BM_histogram_parallel(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(atom_histogram_parallel(zigzag_sampler(), 6, 20000, 1));
}

std::vector<double> scan_grid() {
  std::vector<double> cs;
  for (int i = 1; i <= 64; ++i) cs.push_back(0.05 * i);
  return cs;
}
void BM_scan_serial(benchmark::State& st) {
  const auto cs = scan_grid();
  for (auto _ : st) benchmark::DoNotOptimize(order2_nonrealizability_scan(cs, cs));
}
void BM_scan_parallel(benchmark::State& st) {
  const auto cs = scan_grid();
  for (auto _ : st) benchmark::DoNotOptimize(order2_nonrealizability_scan_parallel(cs, cs));
}

}  // namespace

BENCHMARK(BM_enumerate_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_enumerate_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_fourier_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_fourier_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_histogram_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_histogram_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_scan_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_scan_parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
