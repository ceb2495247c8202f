#pragma once

#include <cstdint>

#include "fts/model.hpp"
#include "fts/rng.hpp"

namespace fts {

/// A simulated stretch X_1..X_T together with every innovation used to build it.
struct SamplePath {
  GridPtr grid;
  std::uint64_t seed = 0;
  int burn_in = 0;
  /// Row t-1 holds X_t.
  Eigen::MatrixXcd series;
  /// Row r holds eps_{r - burn_in + 1}, i.e. innovations for t = 1-burn_in .. T.
  Eigen::MatrixXd innovations;

  std::size_t T() const { return static_cast<std::size_t>(series.rows()); }
  GridFn X(std::size_t t) const;
  /// eps_t for 1 - burn_in <= t <= T.
  Eigen::VectorXd eps(long t) const;
};

/// n independent innovations as rows of an n x P matrix.
Eigen::MatrixXd draw_innovations(const NoiseModel& noise, std::size_t n, Rng& rng);

/// Stationary path after burn-in; bit-identical for identical inputs.
/// burn_in < 0 selects the model default.
SamplePath simulate(const ProcessModel& model, std::size_t T, std::uint64_t seed, int burn_in = -1);

/// Runs the model recursion on given innovations (rows, oldest first, the
/// first `burn_in` rows are warm-up) and returns the remaining rows of X.
Eigen::MatrixXcd run_recursion(const ProcessModel& model, const Eigen::MatrixXd& innovations, int burn_in);

/// Lag-h covariance operator E X_h (x) X_0 of white/far1/maq models
/// (h may be negative: C_{-h} = C_h^dagger).
HSOp true_cov(const ProcessModel& model, int h);

/// Spectral density operator F^lambda = (1/2pi) sum_h C_h exp(-i lambda h).
HSOp true_sdo(const ProcessModel& model, double lambda);

/// m-dependent approximation X^(m)_t = sum_{j<=m} coef_j eps_{t-j}; needs
/// m <= burn_in of the path.
SamplePath mdep_truncate(const ProcessModel& model, const SamplePath& path, int m);

/// Operator B_m(lambda) = (2 pi)^{-1/2} sum_{t<=m} coef_t exp(-i lambda t) such
/// that D^lambda_{m,k} = B_m(lambda) eps_k.
HSOp d_operator(const ProcessModel& model, int m, double lambda);

/// D^lambda_{m,k} from the innovation eps_k.
GridFn d_process(const ProcessModel& model, int m, double lambda, const GridFn& eps_k);

/// F^lambda_m = B_m(lambda) C_eps B_m(lambda)^dagger, the variance of D^lambda_{m,k}.
HSOp d_variance(const ProcessModel& model, int m, double lambda);

}  // namespace fts
