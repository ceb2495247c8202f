#include "fts/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fts/errors.hpp"
#include "fts/kernels.hpp"

namespace fts {

namespace {

constexpr double pi = std::numbers::pi;

Eigen::MatrixXcd centered(const Eigen::MatrixXcd& series, Centering c) {
  if (c == Centering::known_zero_mean) return series;
  const Eigen::RowVectorXcd mean = series.colwise().mean();
  return series.rowwise() - mean;
}

void check_series(const GridPtr& grid, const Eigen::MatrixXcd& series) {
  if (!grid) throw DomainError("missing grid");
  if (series.rows() < 1) throw DomainError("series must contain at least one observation");
  if (static_cast<std::size_t>(series.cols()) != grid->size()) throw DimensionError("series width differs from grid size");
}

HSOp clip(const HSOp& a) {
  const Eigen::ArrayXd sw = Eigen::Map<const Eigen::ArrayXd>(a.grid()->weights().data(),
                                                             static_cast<Eigen::Index>(a.size()))
                                .sqrt();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a.symmetrized());
  const Eigen::VectorXd vals = es.eigenvalues().cwiseMax(0.0);
  Eigen::MatrixXcd s = es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
  s = sw.inverse().matrix().asDiagonal() * s * sw.inverse().matrix().asDiagonal();
  return HSOp::hermitian_part(HSOp(a.grid(), s));
}

}  // namespace

std::vector<std::string> validate(const EstimationConfig& config, std::size_t T) {
  if (!config.window.w) throw DomainError("estimation config has no window");
  if (!(config.bandwidth > 0.0 && config.bandwidth <= 1.0)) throw DomainError("bandwidth must lie in (0, 1]");
  if (config.frequencies.empty()) throw DomainError("no frequencies requested");
  for (double f : config.frequencies)
    if (!(f >= 0.0 && f <= pi + 1e-12)) throw DomainError("frequencies must lie in [0, pi]");
  std::vector<std::string> warnings;
  if (config.bandwidth * static_cast<double>(T) < 8.0)
    warnings.push_back("b_T * T = " + std::to_string(config.bandwidth * static_cast<double>(T)) +
                       " is below 8; the estimate barely smooths");
  return warnings;
}

std::vector<double> fourier_frequencies(std::size_t T) {
  if (T < 1) throw DomainError("T must be positive");
  std::vector<double> f;
  for (std::size_t k = 0; 2 * k <= T; ++k) f.push_back(2.0 * pi * static_cast<double>(k) / static_cast<double>(T));
  return f;
}

GridFn fdft(const GridPtr& grid, const Eigen::MatrixXcd& series, double lambda) {
  check_series(grid, series);
  return GridFn(grid, fdft_rows(series, {lambda}).row(0).transpose());
}

GridFn fdft(const SamplePath& path, double lambda) { return fdft(path.grid, path.series, lambda); }

HSOp periodogram(const GridPtr& grid, const Eigen::MatrixXcd& series, double lambda) {
  const GridFn d = fdft(grid, series, lambda);
  return HSOp(grid, d.values() * d.values().adjoint(), true);
}

HSOp periodogram(const SamplePath& path, double lambda) { return periodogram(path.grid, path.series, lambda); }

SpecEstimate lag_window_sdo(const GridPtr& grid, const Eigen::MatrixXcd& series, const EstimationConfig& config) {
  check_series(grid, series);
  const auto T = static_cast<std::size_t>(series.rows());
  validate(config, T);
  const double b = config.bandwidth;
  const double support = effective_support(config.window);
  const double lag_limit = std::floor(support / b);
  const int L = static_cast<int>(std::min<double>(static_cast<double>(T - 1), lag_limit));
  const Eigen::MatrixXcd x = centered(series, config.center);
  const auto C = lag_covariances(x, L);
  std::vector<double> wts(static_cast<std::size_t>(L) + 1);
  for (int h = 0; h <= L; ++h) wts[static_cast<std::size_t>(h)] = config.window(b * h);

  SpecEstimate est;
  est.config = config;
  est.T = T;
  for (double lambda : config.frequencies) {
    Eigen::MatrixXcd A = 0.5 * C[0];
    for (int h = 1; h <= L; ++h) {
      const double w = wts[static_cast<std::size_t>(h)];
      if (w != 0.0) A += (w * std::exp(cplx(0.0, -lambda * h))) * C[static_cast<std::size_t>(h)];
    }
    Eigen::MatrixXcd F = (A + A.adjoint()) / (2.0 * pi);
    HSOp op(grid, std::move(F), true);
    if (config.clip_negative) op = clip(op);
    est.hermitian_defect.push_back(hermitian_defect(op));
    est.min_eigenvalue.push_back(min_eigenvalue(op));
    est.operators.push_back(std::move(op));
  }
  return est;
}

SpecEstimate lag_window_sdo(const SamplePath& path, const EstimationConfig& config) {
  return lag_window_sdo(path.grid, path.series, config);
}

double periodized_spectral_window(const Window& window, double bandwidth, double theta) {
  if (!window.paired()) throw DomainError("window '" + window.name + "' has no registered Fourier pair");
  const int M = static_cast<int>(std::ceil(200.0 / bandwidth));
  double s = 0.0;
  // sum from the outside in to keep the small tail terms from being swamped
  for (int k = M; k >= 1; --k)
    s += window.spectral((theta + 2.0 * pi * k) / bandwidth) + window.spectral((theta - 2.0 * pi * k) / bandwidth);
  s += window.spectral(theta / bandwidth);
  return s / bandwidth;
}

HSOp smoothed_periodogram_sdo(const GridPtr& grid, const Eigen::MatrixXcd& series, const Window& window,
                              double bandwidth, double lambda, int quad_points) {
  check_series(grid, series);
  if (!window.paired()) throw DomainError("window '" + window.name + "' has no registered Fourier pair");
  if (!(bandwidth > 0.0 && bandwidth <= 1.0)) throw DomainError("bandwidth must lie in (0, 1]");
  if (quad_points < 2) throw DomainError("need at least two quadrature points");
  std::vector<double> alpha(static_cast<std::size_t>(quad_points));
  for (int n = 0; n < quad_points; ++n) alpha[static_cast<std::size_t>(n)] = -pi + 2.0 * pi * n / quad_points;
  const Eigen::MatrixXcd D = fdft_rows(series, alpha);
  Eigen::VectorXd c(quad_points);
  for (int n = 0; n < quad_points; ++n)
    c(n) = (2.0 * pi / quad_points) * periodized_spectral_window(window, bandwidth, lambda - alpha[static_cast<std::size_t>(n)]);
  // sum_n c_n D_n D_n^dagger as a kernel: D^T diag(c) conj(D)
  Eigen::MatrixXcd K = D.transpose() * c.asDiagonal() * D.conjugate();
  K = 0.5 * (K + K.adjoint());
  return HSOp(grid, std::move(K), true);
}

HSOp smoothed_periodogram_sdo(const SamplePath& path, const Window& window, double bandwidth, double lambda,
                              int quad_points) {
  return smoothed_periodogram_sdo(path.grid, path.series, window, bandwidth, lambda, quad_points);
}

HSOp long_run_cov(const GridPtr& grid, const Eigen::MatrixXcd& series, EstimationConfig config) {
  config.frequencies = {0.0};
  return lag_window_sdo(grid, series, config).operators.front() * (2.0 * pi);
}

HSOp long_run_cov(const SamplePath& path, EstimationConfig config) {
  return long_run_cov(path.grid, path.series, std::move(config));
}

double min_eigenvalue(const HSOp& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a.symmetrized(), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

}  // namespace fts
