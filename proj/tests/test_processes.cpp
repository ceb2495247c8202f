#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>

#include "fts/dependence.hpp"
#include "fts/errors.hpp"
#include "fts/processes.hpp"

using namespace fts;

namespace {

constexpr double pi = std::numbers::pi;

ProcessModel scalar_far1() { return parse_model("kind = far1\nrho = scaled_identity:0.5\n"); }

ProcessModel far1_p8() {
  return parse_model("kind = far1\ngrid.P = 8\nnoise.eigenvalues = 1 0.5 0.25\nrho = gauss:0.5:0.2\n");
}

ProcessModel maq_p8() {
  return parse_model(
      "kind = maq\ngrid.P = 8\nnoise.eigenvalues = 1 0.5 0.25\nq = 2\nb1 = gauss:0.6:0.2\nb2 = scaled_identity:0.3\n");
}

double rel(const HSOp& a, const HSOp& b) { return hs_norm(a - b) / std::max(1e-300, hs_norm(b)); }

// (1/T) sum_t X_{t+h} (x) X_t as a plain kernel
Eigen::MatrixXcd sample_lag_cov(const SamplePath& p, int h) {
  const auto T = static_cast<Eigen::Index>(p.T());
  Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(p.series.cols(), p.series.cols());
  for (Eigen::Index t = 0; t + h < T; ++t) k += p.series.row(t + h).transpose() * p.series.row(t).conjugate();
  return k / static_cast<double>(T);
}

}  // namespace

TEST_CASE("simulation is reproducible and seed-sensitive") {
  const auto m = far1_p8();
  const auto a = simulate(m, 64, 42), b = simulate(m, 64, 42), c = simulate(m, 64, 43);
  CHECK(a.series == b.series);
  CHECK(a.innovations == b.innovations);
  CHECK(a.series != c.series);
  CHECK(a.T() == 64);
  CHECK(a.burn_in == m.default_burn_in());
  CHECK_THROWS_AS(simulate(m, 0, 1), DomainError);
  CHECK_THROWS_AS(simulate(maq_p8(), 8, 1, 1), DomainError);
}

TEST_CASE("recursions match the defining equations") {
  SUBCASE("far1") {
    const auto m = far1_p8();
    const auto p = simulate(m, 20, 7);
    for (std::size_t t = 2; t <= p.T(); ++t) {
      const GridFn expect = apply(m.rho(), p.X(t - 1)) + GridFn(p.grid, p.eps(static_cast<long>(t)).cast<cplx>());
      CHECK(norm(p.X(t) - expect) < 1e-12);
    }
  }
  SUBCASE("maq") {
    const auto m = maq_p8();
    const auto p = simulate(m, 20, 8);
    for (std::size_t t = 1; t <= p.T(); ++t) {
      GridFn expect = GridFn::zero(p.grid);
      for (int j = 0; j <= 2; ++j)
        expect = expect + apply(m.b()[static_cast<std::size_t>(j)],
                                GridFn(p.grid, p.eps(static_cast<long>(t) - j).cast<cplx>()));
      CHECK(norm(p.X(t) - expect) < 1e-12);
    }
  }
  SUBCASE("bilinear1") {
    const auto m = parse_model("kind = bilinear1\ngrid.P = 4\nnoise.eigenvalues = 1 0.5\nc = scaled_identity:0.5\n");
    const auto p = simulate(m, 10, 9);
    for (std::size_t t = 1; t <= p.T(); ++t) {
      const auto T = static_cast<long>(t);
      const Eigen::VectorXd e0 = p.eps(T), e1 = p.eps(T - 1);
      const Eigen::VectorXd expect = e0 + (0.5 * e1).cwiseProduct(e0);
      CHECK((p.series.row(static_cast<Eigen::Index>(t - 1)).transpose() - expect.cast<cplx>()).norm() < 1e-12);
    }
    CHECK_THROWS_AS(true_cov(m, 0), UnsupportedError);
  }
}

TEST_CASE("scalar AR(1) closed forms") {
  const auto m = scalar_far1();
  for (int h = 0; h < 5; ++h) CHECK(true_cov(m, h)(0, 0).real() == doctest::Approx(std::pow(0.5, h) * 4.0 / 3.0));
  for (double lambda : {0.0, 0.7, pi / 2, pi}) {
    const double expect = 1.0 / (2.0 * pi * std::norm(1.0 - 0.5 * std::exp(cplx(0.0, -lambda))));
    CHECK(true_sdo(m, lambda)(0, 0).real() == doctest::Approx(expect).epsilon(1e-12));
  }
  // long sample: lag covariances within a few standard errors
  const auto p = simulate(m, 200000, 3);
  CHECK(sample_lag_cov(p, 0)(0, 0).real() == doctest::Approx(4.0 / 3.0).epsilon(0.03));
  CHECK(sample_lag_cov(p, 1)(0, 0).real() == doctest::Approx(2.0 / 3.0).epsilon(0.05));
}

TEST_CASE("operator AR(1): stationary covariance identities") {
  const auto m = far1_p8();
  const HSOp C0 = true_cov(m, 0);
  const HSOp& C = m.noise().effective_covariance();
  CHECK(rel(kron_apply(m.rho(), m.rho(), C0) + C, C0) < 1e-10);
  CHECK(rel(true_cov(m, 3), compose(m.rho(), true_cov(m, 2))) < 1e-10);
  CHECK(rel(true_cov(m, -2), adjoint(true_cov(m, 2))) < 1e-14);
  for (double lambda : {0.0, 1.1, pi}) {
    HSOp s = true_cov(m, 0);
    for (int h = 1; h <= 200; ++h)
      s = s + true_cov(m, h) * std::exp(cplx(0.0, -lambda * h)) + true_cov(m, -h) * std::exp(cplx(0.0, lambda * h));
    CHECK(rel(true_sdo(m, lambda), s * (1.0 / (2.0 * pi))) < 1e-9);
    CHECK(hermitian_defect(true_sdo(m, lambda)) < 1e-14);
  }
}

TEST_CASE("moving average: finite covariance sum") {
  const auto m = maq_p8();
  CHECK(hs_norm(true_cov(m, 3)) == 0.0);
  const double lambda = 0.9;
  HSOp s = HSOp::zero(m.grid());
  for (int h = -2; h <= 2; ++h) s = s + true_cov(m, h) * std::exp(cplx(0.0, -lambda * h));
  CHECK(rel(true_sdo(m, lambda), s * (1.0 / (2.0 * pi))) < 1e-12);
  // sample covariance of a long path
  const auto p = simulate(m, 100000, 11);
  const Eigen::MatrixXcd k = sample_lag_cov(p, 1);
  CHECK(rel(HSOp(m.grid(), k), true_cov(m, 1)) < 0.05);
}

TEST_CASE("m-dependent approximations") {
  const auto ma = maq_p8();
  const auto p = simulate(ma, 30, 5);
  CHECK((mdep_truncate(ma, p, 2).series - p.series).norm() < 1e-12);
  CHECK((mdep_truncate(ma, p, 1).series - p.series).norm() > 0.1);
  CHECK(rel(d_variance(ma, 2, 0.4), true_sdo(ma, 0.4)) < 1e-12);
  CHECK(rel(d_variance(ma, 7, 0.4), true_sdo(ma, 0.4)) < 1e-12);

  const auto ar = far1_p8();
  const auto q = simulate(ar, 30, 6);
  const auto full = mdep_truncate(ar, q, q.burn_in);
  CHECK((full.series.row(0) - q.series.row(0)).norm() < 1e-12);
  // truncation error shrinks geometrically with m
  double prev = 1e300;
  for (int m : {0, 2, 4, 8}) {
    const double e = (mdep_truncate(ar, q, m).series - q.series).norm();
    CHECK(e < prev);
    prev = e;
  }
  CHECK(rel(d_variance(ar, 200, 1.3), true_sdo(ar, 1.3)) < 1e-10);
  CHECK_THROWS_AS(mdep_truncate(ar, q, q.burn_in + 1), DomainError);

  // D_{m,k} is B_m eps_k
  const GridFn e = GridFn(q.grid, q.eps(3).cast<cplx>());
  GridFn expect = GridFn::zero(q.grid);
  for (int t = 0; t <= 4; ++t) expect = expect + apply(power(ar.rho(), t), e) * std::exp(cplx(0.0, -0.5 * t));
  CHECK(norm(d_process(ar, 4, 0.5, e) - expect * (1.0 / std::sqrt(2.0 * pi))) < 1e-12);
}

TEST_CASE("noise models") {
  const auto g = Grid::uniform(16);
  const auto n = NoiseModel::from_eigenvalues(g, {1.0, 0.5, 0.25});
  CHECK(trace(n.effective_covariance()).real() == doctest::Approx(1.75).epsilon(1e-12));
  for (int k = 0; k < 3; ++k) {
    GridFn phi = basis_function(g, "fourier", k);
    CHECK(norm(phi) == doctest::Approx(1.0).epsilon(1e-12));
  }
  // the constant function is an eigenfunction for the leading eigenvalue
  const GridFn one = GridFn::constant(g, 1.0);
  CHECK(norm(apply(n.effective_covariance(), one) - one) < 1e-12);

  const auto capped = NoiseModel::from_eigenvalues(g, {1.0, 0.5, 0.25}, "fourier", NoiseDistribution::gaussian, 2);
  CHECK(trace(capped.effective_covariance()).real() == doctest::Approx(1.5).epsilon(1e-12));

  const auto u = NoiseModel::from_eigenvalues(g, {1.0, 0.5}, "legendre", NoiseDistribution::uniform);
  Rng rng(17);
  const Eigen::MatrixXd e = draw_innovations(u, 40000, rng);
  CHECK(e.cwiseAbs().maxCoeff() < 10.0);
  const Eigen::MatrixXcd S = (e.transpose() * e / 40000.0).cast<cplx>();
  CHECK(rel(HSOp(g, S), u.effective_covariance()) < 0.03);

  const auto g2 = Grid::uniform(2);
  Eigen::MatrixXcd k(2, 2);
  k << 2.0, cplx(0, 0.5), cplx(0, -0.5), 2.0;
  CHECK_THROWS_AS(NoiseModel(HSOp(g2, k, true), NoiseDistribution::gaussian), DomainError);
  k << 1.0, 2.0, 2.0, 1.0;
  CHECK_THROWS_AS(NoiseModel(HSOp(g2, k, true), NoiseDistribution::gaussian), DomainError);
  CHECK_THROWS_AS(NoiseModel::from_eigenvalues(g2, {1.0, 1.0, 1.0}), DomainError);
}

TEST_CASE("model files") {
  for (const auto& entry : std::filesystem::directory_iterator(FTS_MODEL_DIR)) {
    CAPTURE(entry.path().string());
    CHECK_NOTHROW(load_model(entry.path().string()));
  }
  CHECK(load_model(std::string(FTS_MODEL_DIR) + "/far1_p16.model").grid()->size() == 16);
  CHECK_THROWS_AS(parse_model("rho = identity\n"), FormatError);
  CHECK_THROWS_AS(parse_model("kind = white\nkind = white\n"), FormatError);
  CHECK_THROWS_AS(parse_model("kind = white\ncolour = red\n"), FormatError);
  CHECK_THROWS_AS(parse_model("kind = white\nno equals sign\n"), FormatError);
  CHECK_THROWS_AS(parse_model("kind = white\nnoise.eigenvalues = 1\nnoise.covariance = identity\n"), FormatError);
  CHECK_THROWS_AS(parse_model("kind = far1\nrho = scaled_identity:1.2\n"), DomainError);
  CHECK_THROWS_AS(parse_model("kind = spiral\n"), DomainError);
  CHECK_THROWS_AS(parse_model("kind = far1\ngrid.P = 2\nrho = inline:1 2 3\n"), DimensionError);
  const auto m = parse_model("kind = far1\ngrid.P = 2\nrho = inline:0.1 0 0 0.2\nburn_in = 7\n");
  CHECK(m.burn_in() == 7);
  CHECK(m.rho()(1, 1).real() == 0.2);
}

TEST_CASE("dependence coefficients: AR(1) closed form and Monte Carlo") {
  const auto m = scalar_far1();
  for (int j : {0, 1, 3}) {
    // X_j - X'_j = 0.5^j (eps_0 - eps'_0) ~ N(0, 2 * 0.25^j)
    const double sd = std::sqrt(2.0) * std::pow(0.5, j);
    CHECK(*nu_exact(m, j, 2) == doctest::Approx(sd).epsilon(1e-12));
    CHECK(*nu_exact(m, j, 4) == doctest::Approx(std::pow(3.0, 0.25) * sd).epsilon(1e-12));
    for (int p : {2, 4}) {
      const auto e = nu_coefficient(m, j, p, 4000, 21);
      CHECK(std::abs(e.value - *e.exact) < 4.0 * e.se);
    }
  }
  const auto e = nu_higher(m, {2}, 2, 4000, 5);
  CHECK(std::abs(e.value - std::sqrt(2.0) * 0.25) < 4.0 * e.se);
}

TEST_CASE("higher-order dependence coefficients") {
  // linear models have vanishing mixed differences
  CHECK(nu_higher(far1_p8(), {0, 1}, 2, 50, 3).value < 1e-12);
  CHECK(nu_higher(maq_p8(), {0, 1, 2}, 4, 50, 3).value < 1e-12);
  // repeated lags replace one innovation
  const auto ar = far1_p8();
  CHECK(nu_higher(ar, {1, 1}, 2, 200, 9).value == doctest::Approx(nu_higher(ar, {1}, 2, 200, 9).value).epsilon(1e-12));
  // scalar bilinear: mixed difference is 0.5 (e1 - e1')(e0 - e0'), second moment 0.25 * 2 * 2
  const auto bl = parse_model("kind = bilinear1\nc = scaled_identity:0.5\n");
  const auto h = nu_higher(bl, {0, 1}, 2, 20000, 4);
  CHECK(std::abs(h.value - 1.0) < 4.0 * h.se);
  CHECK_FALSE(nu_exact(bl, 0, 2).has_value());
  CHECK_THROWS_AS(nu_higher(bl, {0, 1, 2, 3}, 2, 10, 1), DomainError);
  CHECK_THROWS_AS(nu_coefficient(bl, 0, 3, 10, 1), DomainError);
}
