#include "fts/dfpca.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fts/errors.hpp"

namespace fts {

HSOp EigenSystem::projector(std::size_t j) const {
  if (j >= functions.size()) throw DomainError("projector index out of range");
  return HSOp(functions[j].grid(), functions[j].values() * functions[j].values().adjoint(), true);
}

EigenSystem eigendecompose(const HSOp& a, std::size_t count, double lambda, double tol) {
  const std::size_t P = a.size();
  if (count == 0) count = P;
  if (count > P) throw DomainError("cannot compute more eigenpairs than grid points");
  const double defect = hermitian_defect(a);
  if (defect > tol) throw NumericalError("eigendecompose: operator is not Hermitian (defect " + std::to_string(defect) + ")");

  const auto& g = *a.grid();
  Eigen::VectorXd sw(static_cast<Eigen::Index>(P));
  for (std::size_t i = 0; i < P; ++i) sw(static_cast<Eigen::Index>(i)) = std::sqrt(g.weight(i));
  const Eigen::MatrixXcd S = a.symmetrized();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (S + S.adjoint()));
  if (es.info() != Eigen::Success) throw NumericalError("eigendecompose: eigensolver failed");

  EigenSystem sys;
  sys.lambda = lambda;
  sys.trace = trace(a);
  sys.hermitian_defect = defect;
  sys.values.resize(static_cast<Eigen::Index>(count));
  for (std::size_t k = 0; k < count; ++k) {
    const auto col = static_cast<Eigen::Index>(P - 1 - k);
    sys.values(static_cast<Eigen::Index>(k)) = es.eigenvalues()(col);
    Eigen::VectorXcd phi = es.eigenvectors().col(col).cwiseQuotient(sw.cast<cplx>());
    Eigen::Index imax = 0;
    phi.cwiseAbs().maxCoeff(&imax);
    phi *= std::conj(phi(imax)) / std::abs(phi(imax));
    phi(imax) = std::abs(phi(imax));
    sys.functions.emplace_back(a.grid(), std::move(phi));
  }
  return sys;
}

double projector_error(const EigenSystem& est, const EigenSystem& truth, std::size_t j) {
  if (j >= est.count() || j >= truth.count()) throw DomainError("projector index out of range");
  return hs_norm(est.projector(j) - truth.projector(j));
}

double eigengap(const EigenSystem& truth, std::size_t j) {
  if (j >= truth.count()) throw DomainError("eigengap index out of range");
  const double bj = truth.values(static_cast<Eigen::Index>(j));
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t l = 0; l < truth.count(); ++l)
    if (l != j) gap = std::min(gap, std::abs(bj - truth.values(static_cast<Eigen::Index>(l))));
  const std::size_t P = truth.functions.front().size();
  if (truth.count() < P) {
    const double tail = std::max(0.0, truth.trace.real() - truth.values.sum());
    gap = std::min(gap, std::max(0.0, bj - tail));
  }
  return std::isfinite(gap) ? gap : 0.0;
}

double max_eigenvalue_deviation(const EigenSystem& a, const EigenSystem& b) {
  const auto n = std::min(a.values.size(), b.values.size());
  return (a.values.head(n) - b.values.head(n)).cwiseAbs().maxCoeff();
}

}  // namespace fts
