#include <doctest.h>

#include <numeric>
#include <stdexcept>

#include "fts/estimators.hpp"
#include "fts/kernels.hpp"
#include "fts/parallel.hpp"
#include "fts/weights.hpp"
#include "helpers.hpp"

using namespace fts;

namespace {

Eigen::MatrixXcd random_series(Eigen::Index T, Eigen::Index P, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  Eigen::MatrixXcd x(T, P);
  for (Eigen::Index t = 0; t < T; ++t)
    for (Eigen::Index i = 0; i < P; ++i) x(t, i) = {n(rng), 0.3 * n(rng)};
  return x;
}

}  // namespace

TEST_CASE("parallel lag covariances match the serial reference") {
  const auto x = random_series(300, 7, 1);
  const auto par = lag_covariances(x, 40);
  const auto ser = lag_covariances_serial(x, 40);
  REQUIRE(par.size() == ser.size());
  for (std::size_t h = 0; h < par.size(); ++h) CHECK((par[h] - ser[h]).norm() <= 1e-12 * (1.0 + ser[h].norm()));
  CHECK(par.size() == 41);
}

TEST_CASE("parallel fDFT rows match the serial reference") {
  const auto x = random_series(257, 5, 2);
  std::vector<double> f;
  for (int k = 0; k < 300; ++k) f.push_back(0.01 * k);
  const auto par = fdft_rows(x, f);
  const auto ser = fdft_rows_serial(x, f);
  CHECK((par - ser).norm() <= 1e-12 * ser.norm());
}

TEST_CASE("overlap sum: prefix-sum kernel equals the literal triple loop") {
  for (const char* name : {"bartlett", "parzen", "tukey_hanning", "flat_top", "truncated"}) {
    const Window w = window_by_name(name);
    for (std::size_t T : {20u, 37u, 64u}) {
      for (double b : {0.5, 0.15, 1.0 / static_cast<double>(T)}) {
        const double fast = overlap_sum(w.w, w.support, b, T);
        const double slow = overlap_sum_serial(w.w, b, T);
        CHECK(fast == doctest::Approx(slow).epsilon(1e-11));
      }
    }
  }
}

TEST_CASE("results do not depend on the worker count") {
  const auto x = random_series(512, 6, 3);
  const auto g = Grid::uniform(6);
  EstimationConfig cfg;
  cfg.window = window_by_name("parzen");
  cfg.bandwidth = 0.1;
  cfg.frequencies = {0.0, 0.7, 3.0};
  set_jobs(1);
  const SpecEstimate one = lag_window_sdo(g, x, cfg);
  set_jobs(4);
  const SpecEstimate four = lag_window_sdo(g, x, cfg);
  set_jobs(0);
  for (std::size_t f = 0; f < 3; ++f) CHECK(one.operators[f].kernel() == four.operators[f].kernel());
}

TEST_CASE("parallel_for propagates worker exceptions") {
  CHECK_THROWS_AS(parallel_for(100, [](std::size_t i) {
                    if (i == 57) throw std::runtime_error("boom");
                  }),
                  std::runtime_error);
  std::vector<int> hit(1000, 0);
  parallel_for(hit.size(), [&](std::size_t i) { hit[i] = 1; });
  CHECK(std::accumulate(hit.begin(), hit.end(), 0) == 1000);
}
