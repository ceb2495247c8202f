#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fts/estimators.hpp"
#include "fts/stats.hpp"
#include "fts/weights.hpp"

namespace fts {

/// Limiting second moments of z = sqrt(b T) <(F_hat - E F_hat) v, u> and the
/// analogous z' for (u', v'): gamma = lim E[z conj(z')], sigma = lim E[z z'].
///
///   gamma = kappa (<F u', u><F v, v'> + 1{lambda in {0,pi}} g(u, v') conj(g(v, u')))
///   sigma = kappa (<F v', u><F v, u'> + 1{lambda in {0,pi}} g(u, u') conj(g(v, v')))
///
/// with g(a, b) = <F conj(b), a>. The second terms are the transposed
/// Kronecker products, present only at the real frequencies.
struct LimitCov {
  cplx gamma;
  cplx sigma;
};

LimitCov limit_cov(const HSOp& F, double lambda, double kappa, const GridFn& u, const GridFn& v, const GridFn& u2,
                   const GridFn& v2);

/// True if lambda is 0 or pi (within 1e-12).
bool real_frequency(double lambda);

/// Default real test functions u(x) = 1 + x, v(x) = cos(3x); neither is an
/// eigenfunction of the shipped models and u != v.
std::pair<GridFn, GridFn> default_test_functions(const GridPtr& grid);

// --- CLT harness -----------------------------------------------------------------

struct CltConfig {
  EstimationConfig estimation;
  std::size_t T = 2048;
  int R = 500;
  std::uint64_t seed = 1;
  /// Center at the true F instead of the Monte Carlo mean of F_hat.
  bool center_at_truth = false;
  /// Estimate 2 pi F^0 with long_run_cov instead; frequencies must be {0}.
  bool long_run = false;
};

struct CltFrequency {
  double lambda = 0.0;
  cplx gamma, sigma;
  double var = 0.0;  ///< mean |z|^2
  cplx pseudo;       ///< mean z^2
  double var_ratio = 0.0;      ///< var / gamma
  double pseudo_error = 0.0;   ///< |pseudo - sigma| / gamma
  double var_ratio_kappa_sq = 0.0;  ///< var against the limit with kappa^2 in place of kappa
  double skew_re = 0.0, skew_im = 0.0, kurt_re = 0.0, kurt_im = 0.0;
  double ks_p_re = 1.0, ks_p_im = 1.0;
  double median_im_over_re = 0.0;
  /// Im z vanishes identically (lambda in {0, pi}, or scalar data at any lambda).
  bool imaginary_degenerate = false;
  std::vector<cplx> z;
};

struct CltReport {
  std::size_t T = 0;
  int R = 0;
  std::uint64_t seed = 0;
  double bandwidth = 0.0;
  double kappa = 0.0;
  std::vector<CltFrequency> frequencies;
  /// |corr(z_i, z_j)| for i < j, row-major over pairs.
  std::vector<double> cross_correlation;
};

CltReport mc_clt(const ProcessModel& model, const CltConfig& config, const GridFn& u, const GridFn& v);

struct CltTolerances {
  double var_rel = 0.15;
  double pseudo_abs = 0.15;
  double skew = 0.3;
  double kurt = 0.6;
  double cross_corr_sigmas = 3.0;
  double im_over_re = 0.05;
};

/// Failed checks as readable strings (empty when everything passes).
std::vector<std::string> clt_failures(const CltReport& report, const CltTolerances& tol = {});

// --- rates ------------------------------------------------------------------------

struct RateConfig {
  Window window;
  BandwidthRule rule;
  std::vector<std::size_t> ladder;
  int R = 50;
  std::uint64_t seed = 1;
  std::vector<double> frequencies;
  /// Also run the eigen-consistency diagnostics on every replicate.
  bool eigen = false;
};

struct RateLevel {
  std::size_t T = 0;
  double bandwidth = 0.0;
  double rmse = 0.0;     ///< sqrt(mean ||F_hat - F||^2), pooled over frequencies
  double var_rms = 0.0;  ///< sqrt(mean ||F_hat - mean F_hat||^2)
  double bias = 0.0;     ///< sqrt(mean over frequencies of ||mean F_hat - F||^2)
  // eigen diagnostics
  int eigen_checks = 0;
  int eigen_violations = 0;  ///< replicates with sup_j |beta_hat - beta| > ||F_hat - F||
  double median_projector_error = 0.0;
};

struct RateReport {
  std::vector<RateLevel> levels;
  LinearFit overall;   ///< log rmse on log T
  LinearFit variance;  ///< log var_rms on log (b T)
  LinearFit bias;      ///< log bias on log T
  double min_gap = 0.0;  ///< smallest leading eigengap of the truth over frequencies
};

RateReport rate_regression(const ProcessModel& model, const RateConfig& config);

// --- sample-mean centering ------------------------------------------------------------

struct CenteringLevel {
  std::size_t T = 0;
  double bandwidth = 0.0;
  double rms_distance = 0.0;
};

struct CenteringReport {
  std::vector<CenteringLevel> levels;
  LinearFit fit;  ///< log rms distance on log (b T)
};

CenteringReport centering_check(const ProcessModel& model, const Window& window, const BandwidthRule& rule,
                                const std::vector<std::size_t>& ladder, int R, std::uint64_t seed,
                                double lambda = 0.0);

// --- fDFT variance ----------------------------------------------------------------------

struct FdftLevel {
  std::size_t T = 0;
  double error = 0.0;        ///< ||mean D (x) D - F||_2
  double noise_floor = 0.0;  ///< Monte Carlo standard error of that mean, in HS norm
  double bias = 0.0;         ///< exact ||E D (x) D - F||_2
};

/// E D (x) D = (1/2pi) sum_{|h|<T} (1 - |h|/T) C_h exp(-i lambda h), exactly.
HSOp expected_periodogram(const ProcessModel& model, std::size_t T, double lambda);

std::vector<FdftLevel> var_fdft_check(const ProcessModel& model, double lambda,
                                      const std::vector<std::size_t>& ladder, int R, std::uint64_t seed);

// --- martingale approximation ------------------------------------------------------------

struct DProcessLevel {
  int m = 0;
  double trace_mc = 0.0;
  double trace_mc_se = 0.0;
  double trace_closed = 0.0;  ///< trace F^lambda_m
  /// <D_k, u> regressed on <D_{k-1}, u> and <X_{k-1}, u>.
  ComplexFit regression;
};

struct DProcessReport {
  double lambda = 0.0;
  std::size_t n = 0;
  double trace_truth = 0.0;  ///< trace F^lambda
  std::vector<DProcessLevel> levels;
};

DProcessReport dprocess_diagnostics(const ProcessModel& model, const std::vector<int>& m_ladder, double lambda,
                                    std::size_t n, std::uint64_t seed);

}  // namespace fts
