#pragma once

#include <Eigen/Dense>
#include <vector>

namespace fts {

// Hot loops of the estimators. Each parallel kernel has a plain serial
// counterpart that spells out the sum; tests require both to agree.
//
// A series is a T x P matrix whose row t-1 holds X_t on the grid.

/// Kernels of C_h = (1/T) sum_{t=1}^{T-h} X_{t+h} (x) X_t for h = 0..max_lag.
std::vector<Eigen::MatrixXcd> lag_covariances(const Eigen::MatrixXcd& series, int max_lag);
std::vector<Eigen::MatrixXcd> lag_covariances_serial(const Eigen::MatrixXcd& series, int max_lag);

/// Row n holds the fDFT (2 pi T)^{-1/2} sum_t X_t exp(-i a_n t) at a_n = freqs[n].
Eigen::MatrixXcd fdft_rows(const Eigen::MatrixXcd& series, const std::vector<double>& freqs);
Eigen::MatrixXcd fdft_rows_serial(const Eigen::MatrixXcd& series, const std::vector<double>& freqs);

}  // namespace fts
