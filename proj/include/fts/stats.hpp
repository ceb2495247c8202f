#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace fts {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;
};

/// Ordinary least squares y = a + b x; needs at least three points for a
/// standard error (two points give se = 0).
LinearFit ols(const std::vector<double>& x, const std::vector<double>& y);

double mean(const std::vector<double>& v);
/// Unbiased sample variance.
double variance(const std::vector<double>& v);
double skewness(const std::vector<double>& v);
double excess_kurtosis(const std::vector<double>& v);
double median(std::vector<double> v);

/// Kolmogorov-Smirnov distance to the normal law with the sample's own mean
/// and standard deviation, and its asymptotic p-value.
struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};
KsResult ks_normal(const std::vector<double>& v);
/// P(K > sqrt(n) d) for the Kolmogorov distribution.
double kolmogorov_pvalue(double d, std::size_t n);

/// Complex least squares y = X beta with (homoskedastic) standard errors of
/// each coefficient.
struct ComplexFit {
  Eigen::VectorXcd coef;
  Eigen::VectorXd se;
};
ComplexFit complex_ols(const Eigen::VectorXcd& y, const Eigen::MatrixXcd& X);

/// Two-sided standard normal quantile z with P(|Z| > z) = alpha.
double normal_two_sided(double alpha);

}  // namespace fts
