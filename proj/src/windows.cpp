#include "fts/windows.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "fts/errors.hpp"

namespace fts {

namespace {

constexpr double pi = std::numbers::pi;

double sinc(double x) { return std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x; }

double integrate_square(const Window& win) {
  using boost::math::quadrature::gauss_kronrod;
  const auto sq = [&](double x) {
    const double v = win.w(x);
    return v * v;
  };
  std::vector<double> cuts{0.0};
  for (double b : win.breakpoints)
    if (b > 0.0 && b < win.support) cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  if (std::isfinite(win.support)) {
    cuts.push_back(win.support);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
      total += gauss_kronrod<double, 61>::integrate(sq, cuts[i], cuts[i + 1], 15, 1e-14);
  } else {
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
      total += gauss_kronrod<double, 61>::integrate(sq, cuts[i], cuts[i + 1], 15, 1e-14);
    total += gauss_kronrod<double, 61>::integrate(sq, cuts.back(), std::numeric_limits<double>::infinity(), 15,
                                                  1e-14);
  }
  return 2.0 * total;
}

}  // namespace

Window make_window(std::string name, std::function<double(double)> w, double support, bool lipschitz_at_zero,
                   std::vector<double> breakpoints, std::function<double(double)> spectral) {
  if (!w) throw DomainError("window '" + name + "' has no function");
  if (!(support > 0.0)) throw DomainError("window support must be positive");
  if (std::abs(w(0.0) - 1.0) > 1e-12) throw DomainError("window '" + name + "' must satisfy w(0) = 1");
  const double probe = std::isfinite(support) ? 1.5 * support : 50.0;
  for (int i = 0; i <= 1000; ++i) {
    const double x = probe * i / 1000.0;
    const double a = w(x), b = w(-x);
    if (!std::isfinite(a) || std::abs(a) > 1e6) throw DomainError("window '" + name + "' is not bounded");
    if (a != b) throw DomainError("window '" + name + "' is not even");
    if (std::isfinite(support) && std::abs(x) > support && a != 0.0)
      throw DomainError("window '" + name + "' is nonzero outside its support");
  }
  Window win{std::move(name), std::move(w), support, lipschitz_at_zero, std::move(breakpoints), std::move(spectral), 0.0};
  win.kappa = integrate_square(win);
  return win;
}

std::vector<Window> window_library() {
  std::vector<Window> lib;
  lib.push_back(make_window(
      "bartlett", [](double x) { return std::max(0.0, 1.0 - std::abs(x)); }, 1.0, true, {},
      [](double u) {
        const double s = sinc(u / 2.0);
        return s * s / (2.0 * pi);
      }));
  lib.push_back(make_window(
      "parzen",
      [](double x) {
        const double a = std::abs(x);
        if (a <= 0.5) return 1.0 - 6.0 * a * a + 6.0 * a * a * a;
        if (a <= 1.0) return 2.0 * std::pow(1.0 - a, 3);
        return 0.0;
      },
      1.0, true, {0.5},
      [](double u) {
        const double s = sinc(u / 4.0);
        return 3.0 / (8.0 * pi) * s * s * s * s;
      }));
  lib.push_back(make_window(
      "tukey_hanning",
      [](double x) {
        const double a = std::abs(x);
        return a <= 1.0 ? 0.5 * (1.0 + std::cos(pi * a)) : 0.0;
      },
      1.0, true, {},
      [](double u) { return (sinc(u) + 0.5 * (sinc(u - pi) + sinc(u + pi))) / (2.0 * pi); }));
  lib.push_back(make_window(
      "flat_top",
      [](double x) {
        const double a = std::abs(x);
        if (a <= 0.5) return 1.0;
        if (a <= 1.0) return 2.0 * (1.0 - a);
        return 0.0;
      },
      1.0, true, {0.5}));
  lib.push_back(make_window(
      "truncated", [](double x) { return std::abs(x) <= 1.0 ? 1.0 : 0.0; }, 1.0, true, {}));
  return lib;
}

Window window_by_name(const std::string& name) {
  for (auto& w : window_library())
    if (w.name == name) return w;
  throw DomainError("unknown window '" + name + "'");
}

double effective_support(const Window& win) {
  if (std::isfinite(win.support)) return win.support;
  // Double until a clean stretch is found, then bisect on a fine probe.
  double r = 1.0;
  const auto quiet_beyond = [&](double x0) {
    for (int i = 0; i <= 200; ++i)
      if (std::abs(win.w(x0 * (1.0 + i / 50.0))) >= 1e-12) return false;
    return true;
  };
  while (!quiet_beyond(r)) {
    r *= 2.0;
    if (r > 1e6) throw NumericalError("window '" + win.name + "' does not decay below 1e-12");
  }
  double lo = r / 2.0, hi = r;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (quiet_beyond(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace fts
