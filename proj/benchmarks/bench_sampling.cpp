#include <benchmark/benchmark.h>

#include <vector>

#include "tt/tt.hpp"

namespace {

tt::Margins constant_margins(int m, int n, std::int64_t row) {
  return tt::validate_margins(std::vector<std::int64_t>(m, row),
                              std::vector<std::int64_t>(n, row * m / n));
}

void BM_geometric_matrix(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto solved = tt::solve_typical(constant_margins(n, n, 2 * n));
  const auto model = tt::GeometricMatrixModel::from_means(solved.z);
  tt::RandomStream rng(17);
  for (auto _ : state)
    benchmark::DoNotOptimize(tt::geometric_matrix_sample(model, rng));
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_geometric_matrix)->Arg(5)->Arg(20)->Arg(50);

// Cost of one accepted table, attempts included. Small families only;
// acceptance decays fast with size.
void BM_rejection_draw(benchmark::State& state) {
  const auto solved = tt::solve_typical(
      tt::validate_margins({1, 1, 1}, {1, 1, 1}));
  tt::RandomStream root(23);
  std::uint64_t k = 0;
  for (auto _ : state) {
    tt::RandomStream lane = root.child(k++);
    benchmark::DoNotOptimize(tt::rejection_uniform_sample(solved, lane));
  }
}
BENCHMARK(BM_rejection_draw);

void BM_dp_draw(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const tt::DPTable dp(constant_margins(5, n, n));
  tt::RandomStream root(29);
  std::uint64_t k = 0;
  for (auto _ : state) {
    tt::RandomStream lane = root.child(k++);
    benchmark::DoNotOptimize(tt::dp_uniform_sample(dp, lane));
  }
}
BENCHMARK(BM_dp_draw)->Arg(10)->Arg(40);

void BM_log_mass(benchmark::State& state) {
  const auto margins = constant_margins(5, 5, 10);
  const auto solved = tt::solve_typical(margins);
  const auto model = tt::GeometricMatrixModel::from_means(solved.z);
  tt::RandomStream rng(31);
  const tt::IntMat d = tt::geometric_matrix_sample(model, rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(tt::log_mass(model, d));
}
BENCHMARK(BM_log_mass);

}  // namespace

BENCHMARK_MAIN();
