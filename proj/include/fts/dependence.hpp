#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fts/model.hpp"

namespace fts {

/// Monte Carlo estimate of an L^p dependence coefficient.
struct NuEstimate {
  std::vector<int> lags;
  int p = 2;
  int R = 0;
  double value = 0.0;
  double se = 0.0;
  /// Mean of the p-th power and its standard error (before the 1/p root).
  double moment = 0.0;
  double moment_se = 0.0;
  std::optional<double> exact;
};

/// nu(j) = || X_j - X'_j ||_p where X' reuses every innovation except eps_0,
/// which is replaced by an independent copy.
NuEstimate nu_coefficient(const ProcessModel& model, int j, int p, int R, std::uint64_t seed);

/// Higher-order coefficient for lags (j_1..j_k), k <= 3:
/// || sum over subsets S of {1..k} of (-1)^|S| X_0^{(S)} ||_p, where X_0^{(S)}
/// has eps_{-j_l}, l in S, replaced by independent copies (repeated lags
/// replace the same innovation). The empty tuple gives ||X_0||_p.
NuEstimate nu_higher(const ProcessModel& model, const std::vector<int>& lags, int p, int R, std::uint64_t seed);

/// Closed form of nu(j) for linear models: p = 2 (any innovation law) and
/// p = 4 (gaussian innovations); nullopt otherwise.
std::optional<double> nu_exact(const ProcessModel& model, int j, int p);

}  // namespace fts
