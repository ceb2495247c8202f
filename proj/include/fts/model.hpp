#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fts/hilbert.hpp"

namespace fts {

enum class NoiseDistribution { gaussian, uniform };

/// Innovation law: epsilon = sum_k sqrt(beta_k) xi_k phi_k over the top-K
/// eigenpairs of the covariance, with xi_k i.i.d. standard gaussian or
/// uniform on (-sqrt 3, sqrt 3).
class NoiseModel {
 public:
  NoiseModel(HSOp covariance, NoiseDistribution distribution, int rank_cap = 20);

  /// Covariance sum_k beta_k phi_k (x) phi_k over the given eigenvalues and an
  /// orthonormal basis ("fourier": 1, sqrt2 cos 2 pi x, sqrt2 sin 2 pi x, ...).
  static NoiseModel from_eigenvalues(GridPtr grid, const std::vector<double>& eigenvalues,
                                     const std::string& basis = "fourier",
                                     NoiseDistribution distribution = NoiseDistribution::gaussian,
                                     int rank_cap = 20);

  const GridPtr& grid() const { return covariance_.grid(); }
  const HSOp& covariance() const { return covariance_; }
  /// Covariance of the sampled innovations (after rank cap and clipping).
  const HSOp& effective_covariance() const { return effective_; }
  NoiseDistribution distribution() const { return distribution_; }
  int rank_cap() const { return rank_cap_; }
  /// P x K matrix whose columns are sqrt(beta_k) phi_k.
  const Eigen::MatrixXd& modes() const { return modes_; }

 private:
  HSOp covariance_;
  HSOp effective_;
  NoiseDistribution distribution_;
  int rank_cap_;
  Eigen::MatrixXd modes_;
};

/// Orthonormal basis function k (0-based) of the named family on the grid.
GridFn basis_function(const GridPtr& grid, const std::string& basis, int k);

enum class ModelKind { white, far1, maq, bilinear1 };

std::string to_string(ModelKind kind);

/// Generative specification of a centered stationary functional time series.
///
///   white      X_t = eps_t
///   far1       X_t = rho X_{t-1} + eps_t,  op_norm(rho) < 1
///   maq        X_t = sum_{j<=q} b_j eps_{t-j}
///   bilinear1  X_t = a eps_t + (c eps_{t-1}) * eps_t   (pointwise product)
class ProcessModel {
 public:
  static ProcessModel white(NoiseModel noise);
  static ProcessModel far1(NoiseModel noise, HSOp rho);
  static ProcessModel maq(NoiseModel noise, std::vector<HSOp> b);
  static ProcessModel bilinear1(NoiseModel noise, HSOp a, HSOp c);

  ModelKind kind() const { return kind_; }
  const NoiseModel& noise() const { return noise_; }
  const GridPtr& grid() const { return noise_.grid(); }
  const HSOp& rho() const;
  const std::vector<HSOp>& b() const { return ops_; }
  const HSOp& a() const;
  const HSOp& c() const;
  bool linear() const { return kind_ != ModelKind::bilinear1; }

  /// Coefficient operator of eps_{t-j} in X_t for linear models (zero past
  /// the memory of the model).
  HSOp linear_coefficient(int j) const;
  /// Number of past innovations X_t depends on (infinite for far1: -1).
  int memory() const;

  int default_burn_in() const;
  int burn_in() const { return burn_in_ >= 0 ? burn_in_ : default_burn_in(); }
  void set_burn_in(int n);

 private:
  ProcessModel(ModelKind kind, NoiseModel noise, std::vector<HSOp> ops);
  ModelKind kind_;
  NoiseModel noise_;
  std::vector<HSOp> ops_;  // far1: {rho}; maq: b_0..b_q; bilinear1: {a, c}
  int burn_in_ = -1;
};

/// Operator from a spec string: identity | zero | scaled_identity:s | const:v |
/// gauss:norm:width | file:path | inline:v1 v2 ... (P*P real values, row-major).
/// Relative file paths resolve against base_dir.
HSOp parse_operator(const std::string& spec, const GridPtr& grid, const std::string& base_dir = ".");

/// Parses the key = value model format (one entry per line, '#' comments).
ProcessModel parse_model(const std::string& text, const std::string& base_dir = ".");
ProcessModel load_model(const std::string& path);

}  // namespace fts
