#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <vector>

#include "fts/grid.hpp"

namespace fts {

using cplx = std::complex<double>;

/// A complex function sampled on a grid: the discretized element of H.
class GridFn {
 public:
  GridFn(GridPtr grid, Eigen::VectorXcd values);
  static GridFn zero(GridPtr grid);
  static GridFn constant(GridPtr grid, cplx c);

  template <class F>
  static GridFn from_function(GridPtr grid, F&& f) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(grid->size()));
    for (std::size_t i = 0; i < grid->size(); ++i) v(static_cast<Eigen::Index>(i)) = f(grid->point(i));
    return GridFn(std::move(grid), std::move(v));
  }

  const GridPtr& grid() const { return grid_; }
  const Eigen::VectorXcd& values() const { return values_; }
  std::size_t size() const { return static_cast<std::size_t>(values_.size()); }
  cplx operator[](std::size_t i) const { return values_(static_cast<Eigen::Index>(i)); }

  GridFn conj() const;
  GridFn operator+(const GridFn& o) const;
  GridFn operator-(const GridFn& o) const;
  GridFn operator*(cplx s) const;

 private:
  GridPtr grid_;
  Eigen::VectorXcd values_;
};

/// Kernel operator (Af)(x_i) = sum_j w_j A(x_i, x_j) f(x_j).
///
/// The kernel is the object stored; quadrature weights enter every product,
/// norm and trace. The identity is the diagonal kernel 1/w_i, whose HS norm is
/// sqrt(P) and therefore diverges under refinement, as it should.
class HSOp {
 public:
  HSOp(GridPtr grid, Eigen::MatrixXcd kernel, bool hermitian_hint = false);
  static HSOp zero(GridPtr grid);
  static HSOp identity(GridPtr grid);
  /// (A + A^dagger)/2 flagged Hermitian.
  static HSOp hermitian_part(const HSOp& a);

  const GridPtr& grid() const { return grid_; }
  const Eigen::MatrixXcd& kernel() const { return kernel_; }
  bool hermitian_hint() const { return hermitian_hint_; }
  std::size_t size() const { return static_cast<std::size_t>(kernel_.rows()); }
  cplx operator()(std::size_t i, std::size_t j) const {
    return kernel_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  /// Matrix acting on grid values: kernel * diag(w).
  Eigen::MatrixXcd action() const;
  /// diag(sqrt w) * kernel * diag(sqrt w); unitarily similar to the operator.
  Eigen::MatrixXcd symmetrized() const;

  HSOp operator+(const HSOp& o) const;
  HSOp operator-(const HSOp& o) const;
  HSOp operator*(cplx s) const;

 private:
  GridPtr grid_;
  Eigen::MatrixXcd kernel_;
  bool hermitian_hint_;
};

/// Rank-n grid tensor (n <= 4) with every axis on the same grid, row-major.
///
/// Entries are plain products of function values, e.g. a rank-2 tensor built
/// from x (x) y has entries x(a) y(b); for real-valued data this agrees with
/// the kernel of the operator x (x) y.
class Tensor {
 public:
  Tensor(GridPtr grid, int rank, std::vector<cplx> entries);
  static Tensor zero(GridPtr grid, int rank);
  static Tensor from_fn(const GridFn& f);
  static Tensor from_op(const HSOp& a);

  const GridPtr& grid() const { return grid_; }
  int rank() const { return rank_; }
  std::size_t dim() const { return grid_->size(); }
  std::size_t numel() const { return entries_.size(); }
  const std::vector<cplx>& entries() const { return entries_; }
  std::vector<cplx>& mutable_entries() { return entries_; }

  cplx at(std::span<const std::size_t> idx) const;
  std::size_t offset(std::span<const std::size_t> idx) const;

  HSOp to_op() const;
  Tensor operator+(const Tensor& o) const;
  Tensor operator-(const Tensor& o) const;
  Tensor operator*(cplx s) const;

 private:
  GridPtr grid_;
  int rank_;
  std::vector<cplx> entries_;
};

using Tensor4 = Tensor;

// --- functions on H ---------------------------------------------------------
cplx inner(const GridFn& f, const GridFn& g);  ///< sum_i w_i f_i conj(g_i)
double norm(const GridFn& f);
HSOp tensor(const GridFn& f, const GridFn& g);  ///< kernel f(x) conj(g(y))
GridFn pointwise_product(const GridFn& f, const GridFn& g);

// --- operator algebra -------------------------------------------------------
GridFn apply(const HSOp& a, const GridFn& g);
HSOp compose(const HSOp& a, const HSOp& b);
HSOp adjoint(const HSOp& a);
HSOp conj_op(const HSOp& a);
/// Operator inverse in the weighted algebra; throws NumericalError if singular.
HSOp inverse(const HSOp& a);
HSOp power(const HSOp& a, int k);

double hs_norm(const HSOp& a);
cplx trace(const HSOp& a);
double op_norm(const HSOp& a);
cplx hs_inner(const HSOp& a, const HSOp& b);  ///< trace(A B^dagger)
/// ||A - A^dagger||_2 / ||A||_2 (0 for the zero operator).
double hermitian_defect(const HSOp& a);

/// (A (x)~ B) C = A C B^dagger
HSOp kron_apply(const HSOp& a, const HSOp& b, const HSOp& c);
/// (A (x)~_T B) C = (A (x)~ conj(B)) conj(C)^dagger
HSOp kron_t_apply(const HSOp& a, const HSOp& b, const HSOp& c);

// --- tensors ----------------------------------------------------------------
double hs_norm(const Tensor& t);
/// Tensor (outer) product; axes of `a` first.
Tensor outer(const Tensor& a, const Tensor& b);
/// Output axis k carries input axis perm[k] (0-based), i.e.
/// permute(x1 (x) ... (x) xn, p) = x_{p[0]} (x) ... (x) x_{p[n-1]}.
Tensor permute(const Tensor& t, std::span<const int> perm);
Tensor permute4(const Tensor& t, const std::array<int, 4>& perm);
std::vector<int> inverse_permutation(std::span<const int> perm);

}  // namespace fts
