#include <benchmark/benchmark.h>

#include "fts/grid.hpp"
#include "fts/kernels.hpp"
#include "fts/model.hpp"
#include "fts/processes.hpp"
#include "fts/weights.hpp"
#include "fts/windows.hpp"

namespace {

Eigen::MatrixXcd series(std::size_t T, std::size_t P) {
  const auto grid = fts::Grid::uniform(P);
  const auto model = fts::ProcessModel::far1(fts::NoiseModel::from_eigenvalues(grid, {1.0, 0.5, 0.25}),
                                             fts::HSOp::identity(grid) * 0.5);
  return fts::simulate(model, T, 7).series;
}

std::vector<double> grid_freqs(int n) {
  std::vector<double> f;
  for (int k = 0; k < n; ++k) f.push_back(3.14159 * k / n);
  return f;
}

void lag_cov_parallel(benchmark::State& st) {
  const auto x = series(static_cast<std::size_t>(st.range(0)), 32);
  for (auto _ : st) benchmark::DoNotOptimize(fts::lag_covariances(x, 64));
}

void lag_cov_serial(benchmark::State& st) {
  const auto x = series(static_cast<std::size_t>(st.range(0)), 32);
  for (auto _ : st) benchmark::DoNotOptimize(fts::lag_covariances_serial(x, 64));
}

void fdft_parallel(benchmark::State& st) {
  const auto x = series(static_cast<std::size_t>(st.range(0)), 32);
  const auto f = grid_freqs(512);
  for (auto _ : st) benchmark::DoNotOptimize(fts::fdft_rows(x, f));
}

void fdft_serial(benchmark::State& st) {
  const auto x = series(static_cast<std::size_t>(st.range(0)), 32);
  const auto f = grid_freqs(512);
  for (auto _ : st) benchmark::DoNotOptimize(fts::fdft_rows_serial(x, f));
}

void overlap_parallel(benchmark::State& st) {
  const auto w = fts::window_by_name("bartlett");
  const auto T = static_cast<std::size_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(fts::overlap_sum(w.w, w.support, 0.05, T));
}

void overlap_serial(benchmark::State& st) {
  const auto w = fts::window_by_name("bartlett");
  const auto T = static_cast<std::size_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(fts::overlap_sum_serial(w.w, 0.05, T));
}

}  // namespace

BENCHMARK(lag_cov_parallel)->Arg(1024)->Arg(4096);
BENCHMARK(lag_cov_serial)->Arg(1024)->Arg(4096);
BENCHMARK(fdft_parallel)->Arg(1024)->Arg(4096);
BENCHMARK(fdft_serial)->Arg(1024)->Arg(4096);
BENCHMARK(overlap_parallel)->Arg(256)->Arg(512);
BENCHMARK(overlap_serial)->Arg(256)->Arg(512);

BENCHMARK_MAIN();
