#pragma once

#include <vector>

#include "fts/hilbert.hpp"

namespace fts {

/// Leading eigenpairs of a Hermitian operator, eigenvalues non-increasing.
/// Eigenfunctions are quadrature-orthonormal, phase-fixed so that their
/// largest-magnitude entry is real and positive.
struct EigenSystem {
  double lambda = 0.0;
  Eigen::VectorXd values;
  std::vector<GridFn> functions;
  cplx trace = 0.0;
  double hermitian_defect = 0.0;

  std::size_t count() const { return functions.size(); }
  HSOp projector(std::size_t j) const;
};

/// Solves the eigenproblem on diag(sqrt w) A diag(sqrt w); count = 0 keeps
/// all P pairs. Throws NumericalError if A is not Hermitian within `tol`.
EigenSystem eigendecompose(const HSOp& a, std::size_t count = 0, double lambda = 0.0, double tol = 1e-10);

/// ||Pi_hat_j - Pi_j||_2 for 0-based j.
double projector_error(const EigenSystem& est, const EigenSystem& truth, std::size_t j);

/// min over l != j of |beta_j - beta_l|, including the bound beta_j - tail for
/// eigenvalues that were not computed (tail = trace - sum of computed values).
double eigengap(const EigenSystem& truth, std::size_t j);

/// sup_j |beta_hat_j - beta_j| over the common computed range.
double max_eigenvalue_deviation(const EigenSystem& a, const EigenSystem& b);

}  // namespace fts
