#include "fts/weights.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <regex>

#include "fts/errors.hpp"
#include "fts/parallel.hpp"

namespace fts {

BandwidthRule parse_bandwidth_rule(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  static const std::regex constant(R"(^(?:const:)?([0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?)$)");
  static const std::regex power(
      R"(^(?:([0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?)\*)?T\^\(?(-?[0-9]*\.?[0-9]+)(?:/([0-9]*\.?[0-9]+))?\)?$)");
  std::smatch m;
  if (std::regex_match(s, m, constant)) {
    const double b = std::stod(m[1]);
    if (!(b > 0.0 && b <= 1.0)) throw DomainError("constant bandwidth must lie in (0, 1]");
    return [b](std::size_t) { return b; };
  }
  if (std::regex_match(s, m, power)) {
    const double c = m[1].matched ? std::stod(m[1]) : 1.0;
    double e = std::stod(m[2]);
    if (m[3].matched) e /= std::stod(m[3]);
    if (!(c > 0.0)) throw DomainError("bandwidth constant must be positive");
    if (!(e < 0.0)) throw DomainError("bandwidth exponent must be negative");
    return [c, e](std::size_t T) { return std::min(1.0, c * std::pow(static_cast<double>(T), e)); };
  }
  throw DomainError("cannot parse bandwidth rule '" + text + "'");
}

double overlap_sum(const WeightFunction& w, double support, double bandwidth, std::size_t T) {
  if (T < 2) return 0.0;
  // Lags n with possibly nonzero weight: n <= L.
  const double lim = std::floor(support / bandwidth);
  const auto L = static_cast<std::size_t>(std::min<double>(static_cast<double>(T), std::isfinite(lim) ? lim : 1e18));
  std::vector<double> wv(L + 2);
  for (std::size_t n = 0; n <= L + 1; ++n) wv[n] = n <= L ? w(bandwidth * static_cast<double>(n)) : 0.0;
  // With d = j - s and u = t - j the inner sum is G_d(T - j), where
  // G_d(n) = sum_{u=1}^n w(b(u+d)) w(bu); j runs over d+1..T-1.
  const std::size_t dmax = std::min(T - 2, L == 0 ? std::size_t{0} : L - 1);
  std::vector<double> per_d(dmax + 1, 0.0);
  parallel_for(dmax, [&](std::size_t i) {
    const std::size_t d = i + 1;
    double g = 0.0, acc = 0.0;
    const std::size_t nmax = T - d - 1;
    std::size_t n = 1;
    for (; n <= nmax; ++n) {
      if (n + d > L) break;
      g += wv[n + d] * wv[n];
      acc += g * g;
    }
    // G_d is constant once u + d exceeds the support
    if (n <= nmax) acc += static_cast<double>(nmax - n + 1) * g * g;
    per_d[d] = acc;
  });
  double s = 0.0;
  for (double v : per_d) s += v;
  return s;
}

double overlap_sum_serial(const WeightFunction& w, double bandwidth, std::size_t T) {
  const auto n = static_cast<long>(T);
  double s = 0.0;
  for (long j = 1; j <= n - 1; ++j)
    for (long sidx = 1; sidx <= j - 1; ++sidx) {
      double inner = 0.0;
      for (long t = j + 1; t <= n; ++t) inner += w(bandwidth * static_cast<double>(sidx - t)) * w(bandwidth * static_cast<double>(j - t));
      s += inner * inner;
    }
  return s;
}

WeightValues weight_values(const WeightFunction& w, double support, double bandwidth, std::size_t T) {
  if (T < 1) throw DomainError("T must be positive");
  if (!(bandwidth > 0.0)) throw DomainError("bandwidth must be positive");
  WeightValues v;
  v.T = T;
  v.bandwidth = bandwidth;
  const double lim = std::floor(support / bandwidth);
  const auto L = static_cast<std::size_t>(std::min<double>(static_cast<double>(T), std::isfinite(lim) ? lim : 1e18));
  double prev = w(0.0);
  for (std::size_t t = 1; t <= T; ++t) {
    const double a = t <= L ? w(bandwidth * static_cast<double>(t)) : 0.0;
    v.rho_sq += a * a;
    v.max_sq = std::max(v.max_sq, a * a);
    v.smooth_sum += (a - prev) * (a - prev);
    prev = a;
  }
  v.frob_sq = static_cast<double>(T);  // h = 0, w(0) = 1
  for (std::size_t h = 1; h < T && h <= L; ++h) {
    const double a = w(bandwidth * static_cast<double>(h));
    v.frob_sq += 2.0 * static_cast<double>(T - h) * a * a;
  }
  v.overlap_sum = overlap_sum(w, support, bandwidth, T);
  v.ratio_i = static_cast<double>(T) * v.rho_sq / v.frob_sq;
  v.ratio_ii = v.rho_sq > 0.0 ? v.max_sq / v.rho_sq : INFINITY;
  v.ratio_iii = v.rho_sq > 0.0 ? v.smooth_sum / v.rho_sq : INFINITY;
  v.ratio_iv = v.overlap_sum / (v.frob_sq * v.frob_sq);
  return v;
}

WeightDiagnostics check_weight_conditions(const Window& window, const BandwidthRule& rule,
                                          const std::vector<std::size_t>& ladder) {
  if (ladder.size() < 3) throw DomainError("weight check needs a ladder of at least three sample sizes");
  for (std::size_t i = 1; i < ladder.size(); ++i)
    if (ladder[i] <= ladder[i - 1]) throw DomainError("ladder must be strictly increasing");
  WeightDiagnostics d;
  d.window = window.name;
  d.support_truncated = !std::isfinite(window.support);
  const double support = effective_support(window);
  for (std::size_t T : ladder) d.ladder.push_back(weight_values(window.w, support, rule(T), T));
  const auto decreasing = [&](double WeightValues::*field) {
    for (std::size_t i = 1; i < d.ladder.size(); ++i)
      if (!(d.ladder[i].*field < d.ladder[i - 1].*field)) return false;
    return true;
  };
  d.ii_decreasing = decreasing(&WeightValues::ratio_ii);
  d.iii_decreasing = decreasing(&WeightValues::ratio_iii);
  d.iv_decreasing = decreasing(&WeightValues::ratio_iv);
  d.i_bounded = std::all_of(d.ladder.begin(), d.ladder.end(),
                            [&](const WeightValues& v) { return v.ratio_i >= d.i_low && v.ratio_i <= d.i_high; });
  return d;
}

}  // namespace fts
