#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fts/dependence.hpp"
#include "fts/hilbert.hpp"
#include "fts/processes.hpp"

namespace fts {

/// Set partitions of {0..n-1} as restricted growth strings: labels[i] is the
/// block of element i, blocks numbered in order of first appearance.
std::vector<std::vector<int>> set_partitions(int n);

/// R independent draws of (X_{t_1}, ..., X_{t_n}), one short path per draw.
struct JointSample {
  GridPtr grid;
  std::vector<int> times;
  /// draws[r] is n x P, row i holding X_{t_i}.
  std::vector<Eigen::MatrixXd> draws;

  int order() const { return static_cast<int>(times.size()); }
  int R() const { return static_cast<int>(draws.size()); }
};

/// Throws DomainError for n outside 1..4 and for P > 12 when n = 4.
JointSample sample_joint(const ProcessModel& model, const std::vector<int>& times, int R, std::uint64_t seed);

struct MomentTensor {
  std::vector<int> times;
  int R = 0;
  Tensor mean;
  Tensor se;  ///< entrywise standard error (real)
};

/// Monte Carlo mean of X_{t_1} (x) ... (x) X_{t_n}.
MomentTensor moment_tensor(const JointSample& sample);
MomentTensor moment_tensor(const ProcessModel& model, const std::vector<int>& times, int R, std::uint64_t seed);

struct CumTensor {
  std::vector<int> times;
  int R = 0;
  bool zero_mean = true;
  Tensor value;
  /// Entrywise standard error from 10 independent batches.
  Tensor se;
  double hs_se = 0.0;  ///< hs_norm(se)

  int order() const { return static_cast<int>(times.size()); }
};

/// Joint cumulant by the partition sum
///   sum over partitions pi of (|pi|-1)! (-1)^{|pi|-1} prod_{B in pi} E[(x)_{i in B} X_{t_i}],
/// each product reordered back to the original axes. With zero_mean the
/// partitions containing a singleton block are dropped.
CumTensor cumulant(const JointSample& sample, bool zero_mean = true);
CumTensor cumulant(const ProcessModel& model, const std::vector<int>& times, int R, std::uint64_t seed,
                   bool zero_mean = true);

/// Moment tensor rebuilt from the cumulants of all sub-tuples:
///   E[(x) X_{t_i}] = sum over partitions of the permuted cumulant products.
/// Uses full cumulants (means kept); value and batch standard error.
struct Reconstruction {
  Tensor value;
  Tensor se;
};
Reconstruction moment_from_cumulants(const JointSample& sample);

/// Largest |a - b| / sqrt(se_a^2 + se_b^2) over entries (real and imaginary
/// parts separately); entries whose combined se vanishes must agree to 1e-12.
struct TensorComparison {
  double max_z = 0.0;
  std::size_t entries = 0;
  /// Bonferroni two-sided normal threshold at family level alpha.
  double threshold(double alpha = 0.01) const;
  bool ok(double alpha = 0.01) const { return max_z <= threshold(alpha); }
};
TensorComparison compare_within_error(const Tensor& a, const Tensor& se_a, const Tensor& b, const Tensor& se_b);

// --- summability ---------------------------------------------------------------------

struct SummabilityLevel {
  int L = 0;
  double partial_sum = 0.0;  ///< sum of ||cum||_2 over lag tuples with max |t_i| <= L
  double increment = 0.0;    ///< contribution of the tuples with max |t_i| = L
  double noise = 0.0;        ///< sum of hs_se over those tuples
  std::optional<double> exact;  ///< n = 2, linear models: sum of ||C_h||_2
};

struct SummabilityReport {
  int n = 2;
  std::vector<SummabilityLevel> levels;
};

/// Partial sums over lag tuples (t_1, ..., t_{n-1}, 0) with |t_i| <= L for
/// L = 0..max_radius; n in {2, 3}.
SummabilityReport cumulant_summability(const ProcessModel& model, int n, int max_radius, int R, std::uint64_t seed);

// --- dependence-coefficient bounds ------------------------------------------------------

struct SufconCheck {
  int k = 1;
  int J = 0;
  int p = 2;
  double lhs = 0.0, lhs_se = 0.0;
  double rhs = 0.0, rhs_se = 0.0;
  /// k = 1: |lhs - rhs| <= 3 se; k = 2: lhs <= rhs + 3 se.
  bool holds = false;
};

/// lhs = sum over 0 <= j_1 < ... < j_k <= J of nu_X(j_1..j_k),
/// rhs = 2^{k-1} sum_{j=0}^J j^{k-1} nu(j); k in {1, 2}.
SufconCheck sufcon_bound_check(const ProcessModel& model, int k, int J, int p, int R, std::uint64_t seed);

struct MinboundCheck {
  std::vector<int> lags;
  NuEstimate value;
  std::vector<NuEstimate> drops;  ///< drop-one sub-tuples, in order of the dropped position
  double bound = 0.0;             ///< 2 min over drops
  bool holds = false;             ///< value <= bound + 3 combined se
};

MinboundCheck minbound_check(const ProcessModel& model, const std::vector<int>& lags, int p, int R,
                             std::uint64_t seed);

}  // namespace fts
