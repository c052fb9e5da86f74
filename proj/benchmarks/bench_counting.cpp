#include <benchmark/benchmark.h>

#include <vector>

#include "tt/tt.hpp"

namespace {

tt::Margins constant_margins(int m, int n, std::int64_t row) {
  return tt::validate_margins(std::vector<std::int64_t>(m, row),
                              std::vector<std::int64_t>(n, row * m / n));
}

// Build cost dominates everything else in the DP; measured separately from
// draws (bench_sampling) so regressions are attributable.
void BM_dp_build(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto margins = constant_margins(5, n, n);
  for (auto _ : state) {
    tt::DPTable dp(margins);
    benchmark::DoNotOptimize(dp.total_count());
    state.counters["states"] = static_cast<double>(dp.memo_size());
  }
}
BENCHMARK(BM_dp_build)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_count_square(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto margins = constant_margins(n, n, 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(tt::count_tables(margins));
}
BENCHMARK(BM_count_square)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_enumerate(benchmark::State& state) {
  const auto margins = constant_margins(4, 4, 4);
  for (auto _ : state)
    benchmark::DoNotOptimize(tt::enumerate_tables(margins));
}
BENCHMARK(BM_enumerate)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
