#include "fts/stats.hpp"

#include <algorithm>
#include <array>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <numeric>

#include "fts/errors.hpp"

namespace fts {

LinearFit ols(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw DimensionError("ols: x and y differ in length");
  const std::size_t n = x.size();
  if (n < 2) throw DomainError("ols needs at least two points");
  const double mx = mean(x), my = mean(y);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw DomainError("ols: x values are all equal");
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  if (n > 2) {
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = y[i] - f.intercept - f.slope * x[i];
      rss += r * r;
    }
    f.slope_se = std::sqrt(rss / static_cast<double>(n - 2) / sxx);
  }
  return f;
}

double mean(const std::vector<double>& v) {
  if (v.empty()) throw DomainError("mean of an empty sample");
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double variance(const std::vector<double>& v) {
  if (v.size() < 2) throw DomainError("variance needs at least two values");
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

namespace {

// central moments m2, m3, m4 with 1/n normalization
std::array<double, 3> central_moments(const std::vector<double>& v) {
  const double m = mean(v);
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double x : v) {
    const double d = x - m;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  const double n = static_cast<double>(v.size());
  return {m2 / n, m3 / n, m4 / n};
}

}  // namespace

double skewness(const std::vector<double>& v) {
  const auto [m2, m3, m4] = central_moments(v);
  (void)m4;
  return m2 > 0.0 ? m3 / std::pow(m2, 1.5) : 0.0;
}

double excess_kurtosis(const std::vector<double>& v) {
  const auto [m2, m3, m4] = central_moments(v);
  (void)m3;
  return m2 > 0.0 ? m4 / (m2 * m2) - 3.0 : 0.0;
}

double median(std::vector<double> v) {
  if (v.empty()) throw DomainError("median of an empty sample");
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<long>(mid), v.end());
  const double hi = v[mid];
  if (v.size() % 2) return hi;
  const double lo = *std::max_element(v.begin(), v.begin() + static_cast<long>(mid));
  return 0.5 * (lo + hi);
}

double kolmogorov_pvalue(double d, std::size_t n) {
  const double sn = std::sqrt(static_cast<double>(n));
  // Stephens' small-sample correction of the asymptotic argument
  const double x = (sn + 0.12 + 0.11 / sn) * d;
  if (x < 0.2) return 1.0;
  double s = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    s += (k % 2 ? 2.0 : -2.0) * term;
    if (term < 1e-16) break;
  }
  return std::clamp(s, 0.0, 1.0);
}

KsResult ks_normal(const std::vector<double>& v) {
  if (v.size() < 3) throw DomainError("KS test needs at least three values");
  const double m = mean(v);
  const double sd = std::sqrt(variance(v));
  if (!(sd > 0.0)) return {1.0, 0.0};
  std::vector<double> s(v);
  std::sort(s.begin(), s.end());
  const boost::math::normal_distribution<double> nd(m, sd);
  const double n = static_cast<double>(s.size());
  double d = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double F = boost::math::cdf(nd, s[i]);
    d = std::max({d, F - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - F});
  }
  return {d, kolmogorov_pvalue(d, s.size())};
}

ComplexFit complex_ols(const Eigen::VectorXcd& y, const Eigen::MatrixXcd& X) {
  if (y.size() != X.rows()) throw DimensionError("complex_ols: row mismatch");
  const Eigen::Index n = X.rows(), k = X.cols();
  if (n <= k) throw DomainError("complex_ols: need more observations than regressors");
  const Eigen::MatrixXcd G = X.adjoint() * X;
  Eigen::LDLT<Eigen::MatrixXcd> ldlt(G);
  ComplexFit f;
  f.coef = ldlt.solve(X.adjoint() * y);
  const Eigen::VectorXcd r = y - X * f.coef;
  const double s2 = r.squaredNorm() / static_cast<double>(n - k);
  const Eigen::MatrixXcd Ginv = ldlt.solve(Eigen::MatrixXcd::Identity(k, k));
  f.se.resize(k);
  for (Eigen::Index j = 0; j < k; ++j) f.se(j) = std::sqrt(s2 * Ginv(j, j).real());
  return f;
}

double normal_two_sided(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  return boost::math::quantile(boost::math::complement(boost::math::normal_distribution<double>(), alpha / 2.0));
}

}  // namespace fts
