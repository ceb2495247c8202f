#include "fts/grid.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fts/errors.hpp"

namespace fts {

Grid::Grid(std::vector<double> points, std::vector<double> weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
  if (points_.empty()) throw DomainError("grid must have at least one point");
  if (points_.size() != weights_.size())
    throw DimensionError("grid points and weights differ in length");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i]) || points_[i] < 0.0 || points_[i] > 1.0)
      throw DomainError("grid point outside [0,1]");
    if (i > 0 && !(points_[i] > points_[i - 1]))
      throw DomainError("grid points must be strictly increasing");
    if (!(weights_[i] > 0.0) || !std::isfinite(weights_[i]))
      throw DomainError("grid weights must be positive");
  }
  const double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-12)
    throw DomainError("grid weights must sum to one, got " + std::to_string(total));
}

std::shared_ptr<const Grid> Grid::uniform(std::size_t P) {
  if (P == 0) throw DomainError("grid size must be positive");
  if (P == 1) return std::make_shared<const Grid>(std::vector<double>{0.5}, std::vector<double>{1.0});
  const double h = 1.0 / static_cast<double>(P - 1);
  std::vector<double> x(P), w(P, h);
  for (std::size_t i = 0; i < P; ++i) x[i] = static_cast<double>(i) * h;
  x.back() = 1.0;
  w.front() = w.back() = 0.5 * h;
  return std::make_shared<const Grid>(std::move(x), std::move(w));
}

std::shared_ptr<const Grid> Grid::gauss_legendre(std::size_t P) {
  if (P == 0) throw DomainError("grid size must be positive");
  // Jacobi matrix of the Legendre recurrence on [-1,1].
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(P, P);
  for (std::size_t k = 1; k < P; ++k) {
    const double kk = static_cast<double>(k);
    const double beta = kk / std::sqrt(4.0 * kk * kk - 1.0);
    J(k, k - 1) = J(k - 1, k) = beta;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  std::vector<double> x(P), w(P);
  for (std::size_t i = 0; i < P; ++i) {
    const double v0 = es.eigenvectors()(0, static_cast<Eigen::Index>(i));
    x[i] = 0.5 * (es.eigenvalues()(static_cast<Eigen::Index>(i)) + 1.0);
    w[i] = v0 * v0;  // 2 v0^2 on [-1,1], halved by the map to [0,1]
  }
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& wi : w) wi /= total;
  return std::make_shared<const Grid>(std::move(x), std::move(w));
}

bool same_grid(const GridPtr& a, const GridPtr& b) {
  if (!a || !b) return false;
  return a == b || *a == *b;
}

void require_same_grid(const GridPtr& a, const GridPtr& b, const char* what) {
  if (!same_grid(a, b)) throw DimensionError(std::string(what) + ": grid mismatch");
}

}  // namespace fts
