#pragma once

#include <string>
#include <vector>

#include "fts/hilbert.hpp"
#include "fts/processes.hpp"
#include "fts/windows.hpp"

namespace fts {

enum class Centering { known_zero_mean, sample_mean };

struct EstimationConfig {
  Window window;
  double bandwidth = 0.0;  ///< b_T in (0, 1]
  std::vector<double> frequencies;
  Centering center = Centering::known_zero_mean;
  /// Replace negative eigenvalues of each estimate by zero.
  bool clip_negative = false;
};

/// Checks the configuration against a series length and returns warnings
/// (b_T T < 8); throws on invalid input.
std::vector<std::string> validate(const EstimationConfig& config, std::size_t T);

struct SpecEstimate {
  EstimationConfig config;
  std::size_t T = 0;
  std::vector<HSOp> operators;  ///< one per configured frequency
  std::vector<double> hermitian_defect;
  std::vector<double> min_eigenvalue;
};

/// Fourier frequencies 2 pi k / T in [0, pi].
std::vector<double> fourier_frequencies(std::size_t T);

/// D^lambda_T = (2 pi T)^{-1/2} sum_{t=1}^T X_t exp(-i lambda t).
GridFn fdft(const GridPtr& grid, const Eigen::MatrixXcd& series, double lambda);
GridFn fdft(const SamplePath& path, double lambda);

/// I^lambda_T = D^lambda_T (x) D^lambda_T.
HSOp periodogram(const GridPtr& grid, const Eigen::MatrixXcd& series, double lambda);
HSOp periodogram(const SamplePath& path, double lambda);

/// Lag-window estimator (1/2pi) sum_{|h|<T} w(b h) exp(-i lambda h) C_h.
/// The sum is assembled as A + A^dagger so the result is exactly Hermitian.
SpecEstimate lag_window_sdo(const GridPtr& grid, const Eigen::MatrixXcd& series, const EstimationConfig& config);
SpecEstimate lag_window_sdo(const SamplePath& path, const EstimationConfig& config);

/// Smoothed periodogram  integral of K_b(lambda - a) I^a_T da  over [-pi, pi),
/// with K_b the 2pi-periodized b^{-1} K(./b) of the window's Fourier pair,
/// evaluated by an equispaced rule with `quad_points` nodes.
HSOp smoothed_periodogram_sdo(const GridPtr& grid, const Eigen::MatrixXcd& series, const Window& window,
                              double bandwidth, double lambda, int quad_points = 4096);
HSOp smoothed_periodogram_sdo(const SamplePath& path, const Window& window, double bandwidth, double lambda,
                              int quad_points = 4096);

/// 2 pi F^0 estimated with the lag-window estimator.
HSOp long_run_cov(const GridPtr& grid, const Eigen::MatrixXcd& series, EstimationConfig config);
HSOp long_run_cov(const SamplePath& path, EstimationConfig config);

/// Periodized spectral window sum_k b^{-1} K((theta + 2 pi k)/b).
double periodized_spectral_window(const Window& window, double bandwidth, double theta);

/// Smallest eigenvalue of a Hermitian operator.
double min_eigenvalue(const HSOp& a);

}  // namespace fts
