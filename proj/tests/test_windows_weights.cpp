#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fts/errors.hpp"
#include "fts/weights.hpp"
#include "fts/windows.hpp"

using namespace fts;

namespace {

constexpr double pi = std::numbers::pi;

// w(x) = integral K(u) e^{iux} du = 2 int_0^U K(u) cos(ux) du, midpoint rule
double inverse_transform(const Window& w, double x, double U, int n) {
  const double h = U / n;
  double s = 0.0;
  for (int k = 0; k < n; ++k) {
    const double u = (k + 0.5) * h;
    s += w.spectral(u) * std::cos(u * x);
  }
  return 2.0 * s * h;
}

}  // namespace

TEST_CASE("kappa matches closed-form integrals of w^2") {
  // 2 int_0^1 (1-x)^2; Parzen by polynomial integration; 2 int_0^1 cos^4(pi x / 2); flat top; box
  CHECK(window_by_name("bartlett").kappa == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(window_by_name("parzen").kappa == doctest::Approx(151.0 / 280.0).epsilon(1e-12));
  CHECK(window_by_name("tukey_hanning").kappa == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(window_by_name("flat_top").kappa == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK(window_by_name("truncated").kappa == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_THROWS_AS(window_by_name("nope"), DomainError);
}

TEST_CASE("window invariants") {
  for (const auto& w : window_library()) {
    CAPTURE(w.name);
    CHECK(w(0.0) == 1.0);
    for (double x : {0.1, 0.37, 0.5, 0.81, 1.0, 1.5}) CHECK(w(x) == w(-x));
    CHECK(w(1.01) == 0.0);
    CHECK(effective_support(w) == 1.0);
  }
  CHECK_THROWS_AS(make_window("bad", [](double x) { return 2.0 - x * x; }, 1.0, true), DomainError);
  CHECK_THROWS_AS(make_window("odd", [](double x) { return x < 0 ? 0.5 : 1.0; }, 1.0, true), DomainError);
}

TEST_CASE("spectral pairs invert to the lag window") {
  for (const char* name : {"bartlett", "parzen", "tukey_hanning"}) {
    const Window w = window_by_name(name);
    REQUIRE(w.paired());
    for (double x : {0.0, 0.25, 0.5, 0.8}) {
      CAPTURE(name);
      CAPTURE(x);
      CHECK(inverse_transform(w, x, 4000.0, 400000) == doctest::Approx(w(x)).epsilon(2e-3));
    }
  }
  CHECK_FALSE(window_by_name("flat_top").paired());
}

TEST_CASE("infinite-support windows get an effective support") {
  const Window g = make_window("gauss", [](double x) { return std::exp(-x * x); }, INFINITY, true);
  const double r = effective_support(g);
  CHECK(std::exp(-r * r) <= 1e-12);
  CHECK(std::exp(-(0.9 * r) * (0.9 * r)) > 1e-12);
  CHECK(g.kappa == doctest::Approx(std::sqrt(pi / 2.0)).epsilon(1e-9));
}

TEST_CASE("bandwidth rules") {
  CHECK(parse_bandwidth_rule("T^-1/3")(1000) == doctest::Approx(0.1));
  CHECK(parse_bandwidth_rule("0.5*T^-0.4")(1024) == doctest::Approx(0.5 * std::pow(1024.0, -0.4)));
  CHECK(parse_bandwidth_rule("const:0.1")(77) == 0.1);
  CHECK(parse_bandwidth_rule("0.25")(5) == 0.25);
  CHECK(parse_bandwidth_rule("T^-1")(8) == 0.125);
  CHECK_THROWS_AS(parse_bandwidth_rule("T^0.5"), DomainError);
  CHECK_THROWS_AS(parse_bandwidth_rule("fast"), DomainError);
  CHECK_THROWS_AS(parse_bandwidth_rule("const:2"), DomainError);
}

TEST_CASE("weight quantities against literal sums") {
  const Window w = window_by_name("parzen");
  const double b = 0.13;
  const std::size_t T = 40;
  const WeightValues v = weight_values(w.w, w.support, b, T);
  double rho = 0.0, frob = 0.0, mx = 0.0, smooth = 0.0;
  for (std::size_t t = 1; t <= T; ++t) {
    const double a = w(b * t);
    rho += a * a;
    mx = std::max(mx, a * a);
    smooth += std::pow(a - w(b * (t - 1.0)), 2);
  }
  for (std::size_t s = 1; s <= T; ++s)
    for (std::size_t t = 1; t <= T; ++t) frob += std::pow(w(b * (static_cast<double>(t) - static_cast<double>(s))), 2);
  CHECK(v.rho_sq == doctest::Approx(rho).epsilon(1e-13));
  CHECK(v.frob_sq == doctest::Approx(frob).epsilon(1e-13));
  CHECK(v.max_sq == doctest::Approx(mx));
  CHECK(v.smooth_sum == doctest::Approx(smooth).epsilon(1e-13));
  CHECK(v.ratio_iv == doctest::Approx(overlap_sum_serial(w.w, b, T) / (frob * frob)).epsilon(1e-12));
}

TEST_CASE("Bartlett with b = T^-1/3: (ii)-(iv) decrease, (i) approaches one half from below") {
  const auto d = check_weight_conditions(window_by_name("bartlett"), parse_bandwidth_rule("T^-1/3"),
                                         {256, 512, 1024, 2048, 4096, 8192});
  CHECK(d.ii_decreasing);
  CHECK(d.iii_decreasing);
  CHECK(d.iv_decreasing);
  for (std::size_t i = 0; i < d.ladder.size(); ++i) {
    CHECK(d.ladder[i].ratio_i < 0.5);
    CHECK(d.ladder[i].ratio_i > 0.35);
    if (i) CHECK(d.ladder[i].ratio_i > d.ladder[i - 1].ratio_i);
  }
  // (i) is outside the pinned [0.5, 2] band
  CHECK_FALSE(d.i_bounded);
  CHECK_FALSE(d.ok());
}

TEST_CASE("the unsmoothed periodogram violates (iv)") {
  const auto d = check_weight_conditions(window_by_name("truncated"), parse_bandwidth_rule("T^-1"),
                                         {64, 128, 256, 512});
  CHECK_FALSE(d.iv_decreasing);
  // Phi is identically one: the ratio tends to 1/12
  CHECK(d.ladder.back().ratio_iv == doctest::Approx(1.0 / 12.0).epsilon(0.03));
  CHECK_THROWS_AS(check_weight_conditions(window_by_name("truncated"), parse_bandwidth_rule("T^-1"), {64, 32, 128}),
                  DomainError);
}
