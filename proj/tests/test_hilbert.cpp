#include <doctest.h>

#include <cmath>
#include <numeric>

#include "fts/errors.hpp"
#include "fts/hilbert.hpp"
#include "helpers.hpp"

using namespace fts;
using fts_test::random_fn;
using fts_test::random_op;

namespace {

double rel(const HSOp& a, const HSOp& b) { return hs_norm(a - b) / std::max(1e-300, hs_norm(b)); }

}  // namespace

TEST_CASE("grids integrate what they should") {
  const auto u = Grid::uniform(11);
  CHECK(std::accumulate(u->weights().begin(), u->weights().end(), 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(u->point(0) == 0.0);
  CHECK(u->point(10) == 1.0);

  const auto one = Grid::uniform(1);
  CHECK(one->size() == 1);
  CHECK(one->point(0) == 0.5);
  CHECK(one->weight(0) == 1.0);

  // 4-point Gauss-Legendre is exact through degree 7
  const auto gl = Grid::gauss_legendre(4);
  double s5 = 0.0, s7 = 0.0;
  for (std::size_t i = 0; i < gl->size(); ++i) {
    s5 += gl->weight(i) * std::pow(gl->point(i), 5);
    s7 += gl->weight(i) * std::pow(gl->point(i), 7);
  }
  CHECK(s5 == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
  CHECK(s7 == doctest::Approx(1.0 / 8.0).epsilon(1e-13));

  CHECK_THROWS_AS(Grid({0.0, 0.0}, {0.5, 0.5}), DomainError);
  CHECK_THROWS_AS(Grid({0.0, 1.0}, {0.5, 0.6}), DomainError);
}

TEST_CASE("inner product, norm and tensor follow the quadrature") {
  const auto g = Grid::uniform(9);
  CHECK(norm(GridFn::constant(g, 1.0)) == doctest::Approx(1.0));
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 20; ++rep) {
    const GridFn f = random_fn(g, rng), h = random_fn(g, rng);
    cplx direct = 0.0;
    for (std::size_t i = 0; i < g->size(); ++i) direct += g->weight(i) * f[i] * std::conj(h[i]);
    CHECK(std::abs(inner(f, h) - direct) < 1e-12);
    CHECK(std::abs(inner(f, h) - std::conj(inner(h, f))) < 1e-12);
    // trace of a rank-one operator is the inner product
    CHECK(std::abs(trace(tensor(f, h)) - inner(f, h)) < 1e-12);
    // (f (x) h) x = <x, h> f
    const GridFn x = random_fn(g, rng);
    CHECK(norm(apply(tensor(f, h), x) - f * inner(x, h)) < 1e-12 * (1 + norm(f) * norm(h) * norm(x)));
  }
}

TEST_CASE("apply and compose agree with explicit quadrature sums") {
  const auto g = Grid::gauss_legendre(7);
  std::mt19937_64 rng(5);
  const HSOp a = random_op(g, rng), b = random_op(g, rng);
  const GridFn f = random_fn(g, rng);
  const std::size_t P = g->size();
  for (std::size_t i = 0; i < P; ++i) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < P; ++j) s += g->weight(j) * a(i, j) * f[j];
    CHECK(std::abs(apply(a, f)[i] - s) < 1e-12);
  }
  const HSOp ab = compose(a, b);
  for (std::size_t i = 0; i < P; ++i)
    for (std::size_t j = 0; j < P; ++j) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < P; ++k) s += a(i, k) * g->weight(k) * b(k, j);
      CHECK(std::abs(ab(i, j) - s) < 1e-12);
    }
  CHECK(norm(apply(ab, f) - apply(a, apply(b, f))) < 1e-10 * norm(apply(ab, f)));
  CHECK(norm(apply(HSOp::identity(g), f) - f) < 1e-13);
}

TEST_CASE("adjoint, inverse and power") {
  const auto g = Grid::uniform(6);
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 10; ++rep) {
    const HSOp a = random_op(g, rng);
    const GridFn f = random_fn(g, rng), h = random_fn(g, rng);
    CHECK(std::abs(inner(apply(a, f), h) - inner(f, apply(adjoint(a), h))) < 1e-11);
    const HSOp inv = inverse(a);
    CHECK(rel(compose(inv, a), HSOp::identity(g)) < 1e-9);
    CHECK(rel(power(a, 3), compose(a, compose(a, a))) < 1e-12);
    CHECK(rel(power(a, 0), HSOp::identity(g)) < 1e-15);
  }
  CHECK_THROWS_AS(inverse(HSOp::zero(g)), NumericalError);
}

TEST_CASE("norms") {
  const auto g = Grid::uniform(8);
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 10; ++rep) {
    const HSOp a = random_op(g, rng);
    double s = 0.0;
    for (std::size_t i = 0; i < g->size(); ++i)
      for (std::size_t j = 0; j < g->size(); ++j) s += g->weight(i) * g->weight(j) * std::norm(a(i, j));
    CHECK(hs_norm(a) == doctest::Approx(std::sqrt(s)).epsilon(1e-12));
    CHECK(hs_norm(a) == doctest::Approx(std::sqrt(hs_inner(a, a).real())).epsilon(1e-12));
    CHECK(op_norm(a) <= hs_norm(a) * (1 + 1e-12));
    const GridFn f = random_fn(g, rng);
    CHECK(norm(apply(a, f)) <= op_norm(a) * norm(f) * (1 + 1e-12));
    // rank one: both norms are ||f||^2
    const HSOp ff = tensor(f, f);
    CHECK(op_norm(ff) == doctest::Approx(norm(f) * norm(f)).epsilon(1e-10));
    CHECK(hs_norm(ff) == doctest::Approx(norm(f) * norm(f)).epsilon(1e-10));
  }
  CHECK(hs_norm(HSOp::identity(g)) == doctest::Approx(std::sqrt(8.0)));
}

TEST_CASE("Hermitian hint is verified") {
  const auto g = Grid::uniform(5);
  std::mt19937_64 rng(13);
  const HSOp a = random_op(g, rng);
  CHECK_THROWS_AS(HSOp(g, a.kernel(), true), NumericalError);
  const HSOp h = HSOp::hermitian_part(a);
  CHECK(hermitian_defect(h) < 1e-15);
  CHECK(h.hermitian_hint());
}

TEST_CASE("Kronecker products act as specified") {
  const auto g = Grid::uniform(5);
  std::mt19937_64 rng(17);
  const HSOp a = random_op(g, rng), b = random_op(g, rng), c = random_op(g, rng);
  CHECK(rel(kron_apply(a, b, c), compose(compose(a, c), adjoint(b))) < 1e-12);
  CHECK(rel(kron_t_apply(a, b, c), kron_apply(a, conj_op(b), adjoint(conj_op(c)))) < 1e-12);
  // on rank-one arguments: (a (x)~ b)(f (x) h) = (a f) (x) (b h)
  const GridFn f = random_fn(g, rng), h = random_fn(g, rng);
  CHECK(rel(kron_apply(a, b, tensor(f, h)), tensor(apply(a, f), apply(b, h))) < 1e-11);
  // transpose variant: (a (x)~_T b)(f (x) h) = (a conj h) (x) (conj(b) conj f)
  const HSOp t = kron_t_apply(a, b, tensor(f, h));
  const HSOp expect = tensor(apply(a, h.conj()), apply(conj_op(b), f.conj()));
  CHECK(rel(t, expect) < 1e-11);
}

TEST_CASE("tensors: outer products and permutations") {
  const auto g = Grid::uniform(3);
  std::mt19937_64 rng(19);
  const GridFn x1 = random_fn(g, rng), x2 = random_fn(g, rng), x3 = random_fn(g, rng), x4 = random_fn(g, rng);
  const Tensor t1 = Tensor::from_fn(x1), t2 = Tensor::from_fn(x2), t3 = Tensor::from_fn(x3), t4 = Tensor::from_fn(x4);
  const Tensor t = outer(outer(t1, t2), outer(t3, t4));
  CHECK(t.rank() == 4);
  const std::array<std::size_t, 4> idx{2, 0, 1, 2};
  CHECK(std::abs(t.at(idx) - x1[2] * x2[0] * x3[1] * x4[2]) < 1e-14);

  const std::array<int, 4> p{2, 0, 3, 1};
  const Tensor expect = outer(outer(t3, t1), outer(t4, t2));
  const Tensor got = permute4(t, p);
  CHECK(hs_norm(got - expect) < 1e-14);
  const auto inv = inverse_permutation(p);
  CHECK(hs_norm(permute(got, inv) - t) < 1e-14);
  CHECK(hs_norm(t) == doctest::Approx(norm(x1) * norm(x2) * norm(x3) * norm(x4)).epsilon(1e-12));

  // rank 2 tensors coincide with operator kernels for real data
  const HSOp r = tensor(GridFn(g, x1.values().real().cast<cplx>()), GridFn(g, x2.values().real().cast<cplx>()));
  CHECK(hs_norm(Tensor::from_op(r).to_op() - r) < 1e-15);

  const std::vector<int> bad{0, 0, 1};
  CHECK_THROWS_AS(inverse_permutation(bad), DomainError);
  CHECK_THROWS_AS(outer(t, t1), DomainError);
}

TEST_CASE("grid mismatch is rejected") {
  const auto g1 = Grid::uniform(4);
  const auto g2 = Grid::gauss_legendre(4);
  CHECK_THROWS_AS(inner(GridFn::zero(g1), GridFn::zero(g2)), DimensionError);
  CHECK_THROWS_AS(compose(HSOp::zero(g1), HSOp::zero(g2)), DimensionError);
  // equal-valued grids are interchangeable
  CHECK_NOTHROW(inner(GridFn::zero(g1), GridFn::zero(Grid::uniform(4))));
}
