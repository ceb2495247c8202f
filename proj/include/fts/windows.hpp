#pragma once

#include <functional>
#include <string>
#include <vector>

namespace fts {

/// Lag window: an even, bounded function with w(0) = 1.
struct Window {
  std::string name;
  std::function<double(double)> w;
  /// Radius outside which w vanishes; +inf for infinite support.
  double support = 1.0;
  /// |w(x) - 1| = O(|x|) near zero.
  bool lipschitz_at_zero = true;
  /// Kinks or jumps of w on [0, support]; used to split the integral for kappa.
  std::vector<double> breakpoints;
  /// Fourier pair K with w(x) = integral of K(u) exp(iux) du; empty if unpaired.
  std::function<double(double)> spectral;
  /// Integral of w^2 over the real line.
  double kappa = 0.0;

  double operator()(double x) const { return w(x); }
  bool paired() const { return static_cast<bool>(spectral); }
};

/// Validates a window (w(0) = 1, evenness and boundedness on a probe) and
/// computes kappa by adaptive Gauss-Kronrod quadrature.
Window make_window(std::string name, std::function<double(double)> w, double support, bool lipschitz_at_zero,
                   std::vector<double> breakpoints = {}, std::function<double(double)> spectral = {});

/// bartlett, parzen, tukey_hanning, flat_top, truncated.
std::vector<Window> window_library();
Window window_by_name(const std::string& name);

/// Support radius for finite windows; otherwise the smallest radius beyond
/// which |w| stays below 1e-12 (found on a doubling search).
double effective_support(const Window& win);

}  // namespace fts
