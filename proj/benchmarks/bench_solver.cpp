#include <benchmark/benchmark.h>

#include <vector>

#include "tt/tt.hpp"

namespace {

// Heavy first row and column among constant ones, the shape that stresses
// the dual solver most in practice.
tt::Margins lopsided(int n) {
  std::vector<std::int64_t> r(n, n);
  r[0] = 3 * n;
  return tt::validate_margins(r, r);
}

void BM_solve_constant(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const int n = static_cast<int>(state.range(1));
  const auto margins = tt::validate_margins(
      std::vector<std::int64_t>(m, 10 * n), std::vector<std::int64_t>(n, 10 * m));
  for (auto _ : state)
    benchmark::DoNotOptimize(tt::solve_typical(margins));
}
BENCHMARK(BM_solve_constant)->Args({5, 5})->Args({5, 40})->Args({20, 40});

void BM_solve_lopsided(benchmark::State& state) {
  const auto margins = lopsided(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(tt::solve_typical(margins));
}
BENCHMARK(BM_solve_lopsided)->Arg(10)->Arg(40)->Arg(100);

void BM_check_optimality(benchmark::State& state) {
  const auto solved = tt::solve_typical(lopsided(static_cast<int>(state.range(0))));
  for (auto _ : state)
    benchmark::DoNotOptimize(tt::check_optimality(solved));
}
BENCHMARK(BM_check_optimality)->Arg(10)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
