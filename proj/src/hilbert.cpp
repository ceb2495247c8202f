#include "fts/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fts/errors.hpp"

namespace fts {

namespace {

Eigen::ArrayXd weight_array(const Grid& g) {
  Eigen::ArrayXd w(static_cast<Eigen::Index>(g.size()));
  for (std::size_t i = 0; i < g.size(); ++i) w(static_cast<Eigen::Index>(i)) = g.weight(i);
  return w;
}

template <class Derived>
bool all_finite(const Eigen::DenseBase<Derived>& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const cplx v = m(i, j);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    }
  return true;
}

std::size_t ipow(std::size_t b, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

// --- GridFn -------------------------------------------------------------------

GridFn::GridFn(GridPtr grid, Eigen::VectorXcd values) : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw DomainError("GridFn: null grid");
  if (static_cast<std::size_t>(values_.size()) != grid_->size())
    throw DimensionError("GridFn: value count does not match grid size");
  if (!all_finite(values_)) throw DomainError("GridFn: non-finite value");
}

GridFn GridFn::zero(GridPtr grid) {
  const auto n = static_cast<Eigen::Index>(grid->size());
  return GridFn(std::move(grid), Eigen::VectorXcd::Zero(n));
}

GridFn GridFn::constant(GridPtr grid, cplx c) {
  const auto n = static_cast<Eigen::Index>(grid->size());
  return GridFn(std::move(grid), Eigen::VectorXcd::Constant(n, c));
}

GridFn GridFn::conj() const { return GridFn(grid_, values_.conjugate()); }

GridFn GridFn::operator+(const GridFn& o) const {
  require_same_grid(grid_, o.grid_, "GridFn +");
  return GridFn(grid_, values_ + o.values_);
}

GridFn GridFn::operator-(const GridFn& o) const {
  require_same_grid(grid_, o.grid_, "GridFn -");
  return GridFn(grid_, values_ - o.values_);
}

GridFn GridFn::operator*(cplx s) const { return GridFn(grid_, values_ * s); }

// --- HSOp ---------------------------------------------------------------------

HSOp::HSOp(GridPtr grid, Eigen::MatrixXcd kernel, bool hermitian_hint)
    : grid_(std::move(grid)), kernel_(std::move(kernel)), hermitian_hint_(hermitian_hint) {
  if (!grid_) throw DomainError("HSOp: null grid");
  const auto n = static_cast<Eigen::Index>(grid_->size());
  if (kernel_.rows() != n || kernel_.cols() != n)
    throw DimensionError("HSOp: kernel shape does not match grid size");
  if (!all_finite(kernel_)) throw DomainError("HSOp: non-finite kernel entry");
  if (hermitian_hint_) {
    const double defect = hermitian_defect(*this);
    if (defect > 1e-10)
      throw NumericalError("HSOp flagged Hermitian but relative defect is " + std::to_string(defect));
  }
}

HSOp HSOp::zero(GridPtr grid) {
  const auto n = static_cast<Eigen::Index>(grid->size());
  return HSOp(std::move(grid), Eigen::MatrixXcd::Zero(n, n), true);
}

HSOp HSOp::identity(GridPtr grid) {
  const auto n = static_cast<Eigen::Index>(grid->size());
  Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) k(i, i) = 1.0 / grid->weight(static_cast<std::size_t>(i));
  return HSOp(std::move(grid), std::move(k), true);
}

HSOp HSOp::hermitian_part(const HSOp& a) {
  Eigen::MatrixXcd k = 0.5 * (a.kernel_ + a.kernel_.adjoint());
  return HSOp(a.grid_, std::move(k), true);
}

Eigen::MatrixXcd HSOp::action() const {
  const Eigen::ArrayXd w = weight_array(*grid_);
  return kernel_ * w.matrix().asDiagonal();
}

Eigen::MatrixXcd HSOp::symmetrized() const {
  const Eigen::VectorXd sw = weight_array(*grid_).sqrt().matrix();
  return sw.asDiagonal() * kernel_ * sw.asDiagonal();
}

HSOp HSOp::operator+(const HSOp& o) const {
  require_same_grid(grid_, o.grid_, "HSOp +");
  return HSOp(grid_, kernel_ + o.kernel_);
}

HSOp HSOp::operator-(const HSOp& o) const {
  require_same_grid(grid_, o.grid_, "HSOp -");
  return HSOp(grid_, kernel_ - o.kernel_);
}

HSOp HSOp::operator*(cplx s) const { return HSOp(grid_, kernel_ * s); }

// --- Tensor -------------------------------------------------------------------

Tensor::Tensor(GridPtr grid, int rank, std::vector<cplx> entries)
    : grid_(std::move(grid)), rank_(rank), entries_(std::move(entries)) {
  if (!grid_) throw DomainError("Tensor: null grid");
  if (rank_ < 1 || rank_ > 4) throw DomainError("Tensor: rank must be in 1..4");
  if (entries_.size() != ipow(grid_->size(), rank_))
    throw DimensionError("Tensor: entry count does not match P^rank");
  for (const cplx& v : entries_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw DomainError("Tensor: non-finite entry");
}

Tensor Tensor::zero(GridPtr grid, int rank) {
  if (rank < 1 || rank > 4) throw DomainError("Tensor: rank must be in 1..4");
  const std::size_t n = ipow(grid->size(), rank);
  return Tensor(std::move(grid), rank, std::vector<cplx>(n));
}

Tensor Tensor::from_fn(const GridFn& f) {
  return Tensor(f.grid(), 1, std::vector<cplx>(f.values().data(), f.values().data() + f.values().size()));
}

Tensor Tensor::from_op(const HSOp& a) {
  const std::size_t P = a.size();
  std::vector<cplx> e(P * P);
  for (std::size_t i = 0; i < P; ++i)
    for (std::size_t j = 0; j < P; ++j) e[i * P + j] = a(i, j);
  return Tensor(a.grid(), 2, std::move(e));
}

std::size_t Tensor::offset(std::span<const std::size_t> idx) const {
  if (static_cast<int>(idx.size()) != rank_) throw DimensionError("Tensor: index rank mismatch");
  std::size_t off = 0;
  for (std::size_t k : idx) {
    if (k >= dim()) throw DomainError("Tensor: index out of range");
    off = off * dim() + k;
  }
  return off;
}

cplx Tensor::at(std::span<const std::size_t> idx) const { return entries_[offset(idx)]; }

HSOp Tensor::to_op() const {
  if (rank_ != 2) throw DimensionError("Tensor::to_op requires rank 2");
  const auto P = static_cast<Eigen::Index>(dim());
  Eigen::MatrixXcd k(P, P);
  for (Eigen::Index i = 0; i < P; ++i)
    for (Eigen::Index j = 0; j < P; ++j) k(i, j) = entries_[static_cast<std::size_t>(i * P + j)];
  return HSOp(grid_, std::move(k));
}

Tensor Tensor::operator+(const Tensor& o) const {
  require_same_grid(grid_, o.grid_, "Tensor +");
  if (rank_ != o.rank_) throw DimensionError("Tensor +: rank mismatch");
  std::vector<cplx> e(entries_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += o.entries_[i];
  return Tensor(grid_, rank_, std::move(e));
}

Tensor Tensor::operator-(const Tensor& o) const {
  require_same_grid(grid_, o.grid_, "Tensor -");
  if (rank_ != o.rank_) throw DimensionError("Tensor -: rank mismatch");
  std::vector<cplx> e(entries_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] -= o.entries_[i];
  return Tensor(grid_, rank_, std::move(e));
}

Tensor Tensor::operator*(cplx s) const {
  std::vector<cplx> e(entries_);
  for (cplx& v : e) v *= s;
  return Tensor(grid_, rank_, std::move(e));
}

// --- functions ----------------------------------------------------------------

cplx inner(const GridFn& f, const GridFn& g) {
  require_same_grid(f.grid(), g.grid(), "inner");
  cplx s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += f.grid()->weight(i) * f[i] * std::conj(g[i]);
  return s;
}

double norm(const GridFn& f) { return std::sqrt(std::max(0.0, inner(f, f).real())); }

HSOp tensor(const GridFn& f, const GridFn& g) {
  require_same_grid(f.grid(), g.grid(), "tensor");
  Eigen::MatrixXcd k = f.values() * g.values().adjoint();
  return HSOp(f.grid(), std::move(k));
}

GridFn pointwise_product(const GridFn& f, const GridFn& g) {
  require_same_grid(f.grid(), g.grid(), "pointwise_product");
  return GridFn(f.grid(), f.values().cwiseProduct(g.values()));
}

GridFn apply(const HSOp& a, const GridFn& g) {
  require_same_grid(a.grid(), g.grid(), "apply");
  const Eigen::ArrayXd w = weight_array(*a.grid());
  Eigen::VectorXcd wg = (g.values().array() * w).matrix();
  return GridFn(a.grid(), a.kernel() * wg);
}

HSOp compose(const HSOp& a, const HSOp& b) {
  require_same_grid(a.grid(), b.grid(), "compose");
  const Eigen::ArrayXd w = weight_array(*a.grid());
  Eigen::MatrixXcd k = a.kernel() * w.matrix().asDiagonal() * b.kernel();
  return HSOp(a.grid(), std::move(k));
}

HSOp adjoint(const HSOp& a) { return HSOp(a.grid(), a.kernel().adjoint(), a.hermitian_hint()); }

HSOp conj_op(const HSOp& a) { return HSOp(a.grid(), a.kernel().conjugate(), a.hermitian_hint()); }

HSOp inverse(const HSOp& a) {
  // Operator inverse: action(A^{-1}) = action(A)^{-1}, kernel = action^{-1} diag(1/w).
  const Eigen::ArrayXd w = weight_array(*a.grid());
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a.action());
  const double rcond = lu.rcond();
  if (!(rcond > 1e-14)) throw NumericalError("inverse: operator is numerically singular");
  Eigen::MatrixXcd inv = lu.inverse();
  Eigen::MatrixXcd k = inv * w.inverse().matrix().asDiagonal();
  return HSOp(a.grid(), std::move(k));
}

HSOp power(const HSOp& a, int k) {
  if (k < 0) throw DomainError("power: negative exponent");
  HSOp r = HSOp::identity(a.grid());
  for (int i = 0; i < k; ++i) r = compose(r, a);
  return r;
}

double hs_norm(const HSOp& a) {
  const auto& g = *a.grid();
  double s = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j)
    for (std::size_t i = 0; i < g.size(); ++i) s += g.weight(i) * g.weight(j) * std::norm(a(i, j));
  return std::sqrt(s);
}

cplx trace(const HSOp& a) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a.grid()->weight(i) * a(i, i);
  return s;
}

double op_norm(const HSOp& a) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a.symmetrized());
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

cplx hs_inner(const HSOp& a, const HSOp& b) {
  require_same_grid(a.grid(), b.grid(), "hs_inner");
  const auto& g = *a.grid();
  cplx s = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j)
    for (std::size_t i = 0; i < g.size(); ++i) s += g.weight(i) * g.weight(j) * a(i, j) * std::conj(b(i, j));
  return s;
}

double hermitian_defect(const HSOp& a) {
  const double n = hs_norm(a);
  if (n == 0.0) return 0.0;
  const HSOp d(a.grid(), a.kernel() - a.kernel().adjoint());
  return hs_norm(d) / n;
}

HSOp kron_apply(const HSOp& a, const HSOp& b, const HSOp& c) {
  return compose(compose(a, c), adjoint(b));
}

HSOp kron_t_apply(const HSOp& a, const HSOp& b, const HSOp& c) {
  return kron_apply(a, conj_op(b), adjoint(conj_op(c)));
}

double hs_norm(const Tensor& t) {
  const auto& g = *t.grid();
  const std::size_t P = g.size();
  std::vector<std::size_t> idx(static_cast<std::size_t>(t.rank()), 0);
  double s = 0.0;
  for (std::size_t off = 0; off < t.numel(); ++off) {
    double w = 1.0;
    for (std::size_t k : idx) w *= g.weight(k);
    s += w * std::norm(t.entries()[off]);
    for (int ax = t.rank() - 1; ax >= 0; --ax) {
      if (++idx[static_cast<std::size_t>(ax)] < P) break;
      idx[static_cast<std::size_t>(ax)] = 0;
    }
  }
  return std::sqrt(s);
}

Tensor outer(const Tensor& a, const Tensor& b) {
  require_same_grid(a.grid(), b.grid(), "outer");
  const int rank = a.rank() + b.rank();
  if (rank > 4) throw DomainError("outer: resulting rank exceeds 4");
  std::vector<cplx> e(a.numel() * b.numel());
  for (std::size_t i = 0; i < a.numel(); ++i)
    for (std::size_t j = 0; j < b.numel(); ++j) e[i * b.numel() + j] = a.entries()[i] * b.entries()[j];
  return Tensor(a.grid(), rank, std::move(e));
}

std::vector<int> inverse_permutation(std::span<const int> perm) {
  std::vector<int> inv(perm.size(), -1);
  for (std::size_t k = 0; k < perm.size(); ++k) {
    const int p = perm[k];
    if (p < 0 || static_cast<std::size_t>(p) >= perm.size() || inv[static_cast<std::size_t>(p)] != -1)
      throw DomainError("invalid permutation");
    inv[static_cast<std::size_t>(p)] = static_cast<int>(k);
  }
  return inv;
}

Tensor permute(const Tensor& t, std::span<const int> perm) {
  if (static_cast<int>(perm.size()) != t.rank()) throw DomainError("permute: permutation length != rank");
  (void)inverse_permutation(perm);  // validates
  const std::size_t P = t.dim();
  const auto r = static_cast<std::size_t>(t.rank());
  std::vector<std::size_t> stride(r);
  for (std::size_t k = 0; k < r; ++k) stride[k] = ipow(P, static_cast<int>(r - 1 - k));
  std::vector<cplx> out(t.numel());
  std::vector<std::size_t> idx(r, 0);  // output multi-index
  for (std::size_t off = 0; off < t.numel(); ++off) {
    // output axis k carries input axis perm[k]: in[perm[k]] = out[k]
    std::size_t in_off = 0;
    for (std::size_t k = 0; k < r; ++k) in_off += idx[k] * stride[static_cast<std::size_t>(perm[k])];
    out[off] = t.entries()[in_off];
    for (std::size_t ax = r; ax-- > 0;) {
      if (++idx[ax] < P) break;
      idx[ax] = 0;
    }
  }
  return Tensor(t.grid(), t.rank(), std::move(out));
}

Tensor permute4(const Tensor& t, const std::array<int, 4>& perm) {
  if (t.rank() != 4) throw DimensionError("permute4 requires a rank-4 tensor");
  return permute(t, perm);
}

}  // namespace fts
