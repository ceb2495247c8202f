#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "fts/cumulants.hpp"
#include "fts/errors.hpp"
#include "fts/stats.hpp"

using namespace fts;

namespace {

ProcessModel scalar(const std::string& kind_and_more) { return parse_model(kind_and_more); }

Tensor constant_tensor(const GridPtr& g, int rank, double v) {
  Tensor t = Tensor::zero(g, rank);
  for (auto& e : t.mutable_entries()) e = v;
  return t;
}

}  // namespace

TEST_CASE("set partitions are the restricted growth strings") {
  const std::vector<std::size_t> bell{1, 1, 2, 5, 15, 52};
  for (int n = 1; n <= 5; ++n) {
    const auto parts = set_partitions(n);
    CHECK(parts.size() == bell[static_cast<std::size_t>(n)]);
    std::set<std::vector<int>> unique(parts.begin(), parts.end());
    CHECK(unique.size() == parts.size());
    for (const auto& p : parts) {
      REQUIRE(p.size() == static_cast<std::size_t>(n));
      CHECK(p[0] == 0);
      int top = 0;
      for (std::size_t i = 1; i < p.size(); ++i) {
        CHECK(p[i] <= top + 1);
        top = std::max(top, p[i]);
      }
    }
  }
}

TEST_CASE("second-order cumulants are covariances") {
  const auto m = parse_model("kind = far1\ngrid.P = 4\nnoise.eigenvalues = 1 0.5\nrho = gauss:0.5:0.2\n");
  const auto c = cumulant(m, {1, 0}, 4000, 3);
  const Tensor truth = Tensor::from_op(true_cov(m, 1));
  CHECK(compare_within_error(c.value, c.se, truth, Tensor::zero(m.grid(), 2)).ok());
  CHECK(c.hs_se > 0.0);
  CHECK(c.order() == 2);
}

TEST_CASE("scalar cumulants against closed forms") {
  SUBCASE("uniform white noise: fourth cumulant -6/5, third zero") {
    const auto m = scalar("kind = white\nnoise.distribution = uniform\n");
    const auto g = m.grid();
    const auto c4 = cumulant(m, {0, 0, 0, 0}, 20000, 5);
    CHECK(compare_within_error(c4.value, c4.se, constant_tensor(g, 4, -1.2), Tensor::zero(g, 4)).ok());
    const auto c3 = cumulant(m, {0, 0, 0}, 20000, 6);
    CHECK(compare_within_error(c3.value, c3.se, Tensor::zero(g, 3), Tensor::zero(g, 3)).ok());
  }
  SUBCASE("bilinear: E[X_1 X_1 X_0] = E[(1 + e/2)^2 e] = 1") {
    const auto m = scalar("kind = bilinear1\nc = scaled_identity:0.5\n");
    const auto c = cumulant(m, {1, 1, 0}, 20000, 7);
    CHECK(compare_within_error(c.value, c.se, constant_tensor(m.grid(), 3, 1.0), Tensor::zero(m.grid(), 3)).ok());
    // ... and it is far from zero
    CHECK_FALSE(compare_within_error(c.value, c.se, Tensor::zero(m.grid(), 3), Tensor::zero(m.grid(), 3)).ok());
  }
  SUBCASE("gaussian linear processes have no cumulants beyond order two") {
    const auto m = scalar("kind = far1\nrho = scaled_identity:0.5\n");
    const auto c = cumulant(m, {2, 1, 0, 0}, 20000, 8);
    CHECK(compare_within_error(c.value, c.se, Tensor::zero(m.grid(), 4), Tensor::zero(m.grid(), 4)).ok());
  }
}

TEST_CASE("moment-cumulant inversion reproduces the moment tensor") {
  const auto m = parse_model("kind = bilinear1\ngrid.P = 3\nnoise.eigenvalues = 1 0.5\nc = scaled_identity:0.5\n");
  for (const auto& times : std::vector<std::vector<int>>{{0}, {1, 0}, {2, 1, 0}, {1, 1, 0, 0}}) {
    const auto s = sample_joint(m, times, 200, 9);
    const auto mom = moment_tensor(s);
    const auto rec = moment_from_cumulants(s);
    CHECK(hs_norm(rec.value - mom.mean) < 1e-10 * (1.0 + hs_norm(mom.mean)));
  }
  // order one without centering is the mean
  const auto s = sample_joint(m, {0}, 100, 2);
  CHECK(hs_norm(cumulant(s, false).value - moment_tensor(s).mean) < 1e-14);
}

TEST_CASE("cumulants permute with their time arguments") {
  const auto m = parse_model("kind = bilinear1\ngrid.P = 3\nnoise.eigenvalues = 1 0.5\nc = scaled_identity:0.5\n");
  const auto a = cumulant(m, {2, 0, 1}, 200, 4);
  const auto b = cumulant(m, {0, 1, 2}, 200, 4);
  // axis k of b carries time k; a's axes carry times 2, 0, 1
  const std::vector<int> perm{2, 0, 1};
  CHECK(hs_norm(permute(b.value, perm) - a.value) < 1e-12 * (1.0 + hs_norm(a.value)));
}

TEST_CASE("comparison thresholds and argument checks") {
  const auto g = Grid::uniform(2);
  TensorComparison t;
  t.entries = 8;
  CHECK(t.threshold(0.01) > normal_two_sided(0.01));
  const Tensor one = constant_tensor(g, 2, 1.0);
  CHECK(compare_within_error(one, Tensor::zero(g, 2), one, Tensor::zero(g, 2)).max_z == 0.0);
  CHECK_FALSE(compare_within_error(one, Tensor::zero(g, 2), one * 1.1, Tensor::zero(g, 2)).ok());

  const auto big = parse_model("kind = white\ngrid.P = 16\nnoise.eigenvalues = 1\n");
  CHECK_THROWS_AS(sample_joint(big, {0, 0, 0, 0}, 10, 1), DomainError);
  CHECK_THROWS_AS(sample_joint(big, {0, 0, 0, 0, 0}, 10, 1), DomainError);
  CHECK_THROWS_AS(sample_joint(big, {}, 10, 1), DomainError);
  CHECK_THROWS_AS(cumulant(big, {0, 0}, 10, 1), DomainError);
}

TEST_CASE("summability of second-order cumulants") {
  const auto m = scalar("kind = far1\nrho = scaled_identity:0.5\n");
  const auto rep = cumulant_summability(m, 2, 5, 4000, 10);
  REQUIRE(rep.levels.size() == 6);
  double exact = 0.0;
  for (const auto& l : rep.levels) {
    exact += (l.L == 0 ? 1.0 : 2.0) * (4.0 / 3.0) * std::pow(0.5, l.L);
    REQUIRE(l.exact.has_value());
    CHECK(*l.exact == doctest::Approx(exact).epsilon(1e-10));
    CHECK(l.noise > 0.0);
  }
  double noise = 0.0;
  for (const auto& l : rep.levels) noise += l.noise;
  CHECK(std::abs(rep.levels.back().partial_sum - exact) < 4.0 * noise);
  const auto r3 = cumulant_summability(m, 3, 1, 200, 11);
  CHECK(r3.levels.size() == 2);
  CHECK_FALSE(r3.levels[0].exact.has_value());
}

TEST_CASE("dependence-coefficient inequalities") {
  const auto ar = scalar("kind = far1\nrho = scaled_identity:0.5\n");
  const auto k1 = sufcon_bound_check(ar, 1, 4, 2, 2000, 12);
  CHECK(k1.holds);
  CHECK(std::abs(k1.lhs - k1.rhs) < 3.0 * std::hypot(k1.lhs_se, k1.rhs_se) + 1e-12);
  const auto k2 = sufcon_bound_check(ar, 2, 4, 2, 500, 13);
  CHECK(k2.holds);
  CHECK(k2.lhs < 1e-10);

  const auto bl = scalar("kind = bilinear1\nc = scaled_identity:0.5\n");
  const auto b2 = sufcon_bound_check(bl, 2, 3, 2, 2000, 14);
  CHECK(b2.holds);
  CHECK(b2.lhs > 0.5);

  const auto mb = minbound_check(bl, {0, 1}, 2, 2000, 15);
  CHECK(mb.drops.size() == 2);
  CHECK(mb.holds);
  CHECK(mb.bound == doctest::Approx(2.0 * std::min(mb.drops[0].value, mb.drops[1].value)));
  // the process is one-dependent, so a lag of 2 makes both sides vanish up to roundoff
  const auto zero = minbound_check(bl, {1, 2}, 2, 2000, 16);
  CHECK(std::abs(zero.value.value) < 1e-12);
  CHECK(zero.holds);
  const auto triple = minbound_check(bl, {0, 1, 2}, 2, 2000, 17);
  CHECK(triple.drops.size() == 3);
  CHECK(triple.holds);
  CHECK_THROWS_AS(sufcon_bound_check(bl, 3, 3, 2, 10, 1), DomainError);
}
