#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace fts {

/// Quadrature grid over [0,1]: the discretization of H = L^2[0,1].
///
/// Points are strictly increasing in [0,1], weights are positive and sum to one
/// (the domain has unit length). All operator algebra in this library is
/// quadrature-weighted, so swapping the rule (trapezoid, Gauss-Legendre) changes
/// accuracy but never the formulas.
class Grid {
 public:
  Grid(std::vector<double> points, std::vector<double> weights);

  /// Uniform points 0, 1/(P-1), ..., 1 with trapezoid weights. P == 1 yields the
  /// single point 0.5 with unit weight (the scalar case).
  static std::shared_ptr<const Grid> uniform(std::size_t P);

  /// Gauss-Legendre nodes mapped to [0,1] (Golub-Welsch).
  static std::shared_ptr<const Grid> gauss_legendre(std::size_t P);

  std::size_t size() const { return points_.size(); }
  std::span<const double> points() const { return points_; }
  std::span<const double> weights() const { return weights_; }
  double point(std::size_t i) const { return points_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }

  bool operator==(const Grid& other) const {
    return points_ == other.points_ && weights_ == other.weights_;
  }

 private:
  std::vector<double> points_;
  std::vector<double> weights_;
};

using GridPtr = std::shared_ptr<const Grid>;

/// True if both pointers refer to the same grid (by identity or by value).
bool same_grid(const GridPtr& a, const GridPtr& b);

/// Throws DimensionError unless same_grid(a, b).
void require_same_grid(const GridPtr& a, const GridPtr& b, const char* what);

}  // namespace fts
