#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fts/windows.hpp"

namespace fts {

using WeightFunction = std::function<double(double)>;
using BandwidthRule = std::function<double(std::size_t)>;

/// Parses "T^-1/3", "0.5*T^-0.4", "const:0.1" or a plain number.
BandwidthRule parse_bandwidth_rule(const std::string& text);

/// Scalar weights A_t = w(b t) at one sample size, with the four quantities
/// of the weight conditions and their normalized ratios:
///   (i)   T rho^2 / ||Phi||_F^2
///   (ii)  max_{1<=t<=T} w(bt)^2 / rho^2
///   (iii) sum_{t=1}^T (w(bt) - w(b(t-1)))^2 / rho^2
///   (iv)  sum_{j<T} sum_{s<j} (sum_{t>j} w(b(s-t)) w(b(j-t)))^2 / ||Phi||_F^4
/// where rho^2 = sum_{t=1}^T w(bt)^2 and ||Phi||_F^2 = sum_{s,t=1}^T w(b(t-s))^2.
struct WeightValues {
  std::size_t T = 0;
  double bandwidth = 0.0;
  double frob_sq = 0.0;
  double rho_sq = 0.0;
  double max_sq = 0.0;
  double smooth_sum = 0.0;
  double overlap_sum = 0.0;
  double ratio_i = 0.0;
  double ratio_ii = 0.0;
  double ratio_iii = 0.0;
  double ratio_iv = 0.0;
};

/// `support` bounds the lags with nonzero weight (w(x) = 0 for |x| > support).
WeightValues weight_values(const WeightFunction& w, double support, double bandwidth, std::size_t T);

/// Overlap sum of condition (iv) via prefix sums, parallel over the lag offset.
double overlap_sum(const WeightFunction& w, double support, double bandwidth, std::size_t T);
/// The same sum evaluated literally as a triple loop, O(T^3).
double overlap_sum_serial(const WeightFunction& w, double bandwidth, std::size_t T);

struct WeightDiagnostics {
  std::string window;
  std::vector<WeightValues> ladder;
  bool i_bounded = false;  ///< ratio (i) within [i_low, i_high] at every T
  double i_low = 0.5, i_high = 2.0;
  bool ii_decreasing = false;
  bool iii_decreasing = false;
  bool iv_decreasing = false;
  /// The window has infinite support and was truncated where |w| < 1e-12.
  bool support_truncated = false;
  bool ok() const { return i_bounded && ii_decreasing && iii_decreasing && iv_decreasing; }
};

WeightDiagnostics check_weight_conditions(const Window& window, const BandwidthRule& rule,
                                          const std::vector<std::size_t>& ladder);

}  // namespace fts
