#include "fts/dependence.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

#include "fts/errors.hpp"
#include "fts/parallel.hpp"
#include "fts/processes.hpp"

namespace fts {

namespace {

void check_order(int p) {
  if (p != 2 && p != 4) throw DomainError("dependence order p must be 2 or 4");
}

double weighted_norm_pow(const Eigen::VectorXcd& v, const Grid& g, int p) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += g.weight(static_cast<std::size_t>(i)) * std::norm(v(i));
  return p == 2 ? s : s * s;
}

NuEstimate summarize(std::vector<int> lags, int p, const std::vector<double>& powers) {
  NuEstimate e;
  e.lags = std::move(lags);
  e.p = p;
  e.R = static_cast<int>(powers.size());
  double mean = 0.0;
  for (double v : powers) mean += v;
  mean /= static_cast<double>(powers.size());
  double ss = 0.0;
  for (double v : powers) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(powers.size() - 1));
  e.moment = mean;
  e.moment_se = sd / std::sqrt(static_cast<double>(powers.size()));
  e.value = std::pow(mean, 1.0 / p);
  // delta method; undefined at zero, where the estimate is exact anyway
  e.se = mean > 0.0 ? e.moment_se * std::pow(mean, 1.0 / p - 1.0) / p : 0.0;
  return e;
}

// X_0 as a function of innovations eps_{-s}, s = 0..depth (row s).
class TimeZeroEvaluator {
 public:
  explicit TimeZeroEvaluator(const ProcessModel& model) : model_(model) {
    switch (model.kind()) {
      case ModelKind::white: break;
      case ModelKind::far1: ops_.push_back(model.rho().action()); break;
      case ModelKind::maq:
        for (const auto& b : model.b()) ops_.push_back(b.action());
        break;
      case ModelKind::bilinear1:
        ops_.push_back(model.a().action());
        ops_.push_back(model.c().action());
        break;
    }
  }

  Eigen::VectorXcd operator()(const Eigen::MatrixXd& eps) const {
    const Eigen::Index depth = eps.rows() - 1;
    switch (model_.kind()) {
      case ModelKind::white: return eps.row(0).transpose().cast<cplx>();
      case ModelKind::far1: {
        Eigen::VectorXcd x = eps.row(depth).transpose().cast<cplx>();
        for (Eigen::Index s = depth - 1; s >= 0; --s) x = ops_[0] * x + eps.row(s).transpose().cast<cplx>();
        return x;
      }
      case ModelKind::maq: {
        Eigen::VectorXcd x = Eigen::VectorXcd::Zero(eps.cols());
        for (Eigen::Index s = 0; s <= depth && s < static_cast<Eigen::Index>(ops_.size()); ++s)
          x += ops_[static_cast<std::size_t>(s)] * eps.row(s).transpose().cast<cplx>();
        return x;
      }
      case ModelKind::bilinear1: {
        const Eigen::VectorXcd e0 = eps.row(0).transpose().cast<cplx>();
        const Eigen::VectorXcd e1 = eps.row(1).transpose().cast<cplx>();
        return ops_[0] * e0 + (ops_[1] * e1).cwiseProduct(e0);
      }
    }
    return {};
  }

 private:
  const ProcessModel& model_;
  std::vector<Eigen::MatrixXcd> ops_;
};

int tail_depth(const ProcessModel& model) {
  if (model.kind() != ModelKind::far1) return std::max(model.memory(), 1);
  const double r = op_norm(model.rho());
  if (r < 1e-300) return 1;
  return std::max(1, static_cast<int>(std::ceil(std::log(1e-17) / std::log(r))));
}

}  // namespace

std::optional<double> nu_exact(const ProcessModel& model, int j, int p) {
  check_order(p);
  if (j < 0) throw DomainError("lag must be non-negative");
  if (!model.linear()) return std::nullopt;
  const HSOp op = model.linear_coefficient(j);
  const HSOp S = kron_apply(op, op, model.noise().effective_covariance()) * 2.0;
  const double tr = trace(S).real();
  if (p == 2) return std::sqrt(std::max(0.0, tr));
  if (model.noise().distribution() != NoiseDistribution::gaussian) return std::nullopt;
  const double m4 = tr * tr + 2.0 * trace(compose(S, S)).real();
  return std::pow(std::max(0.0, m4), 0.25);
}

NuEstimate nu_coefficient(const ProcessModel& model, int j, int p, int R, std::uint64_t seed) {
  check_order(p);
  if (j < 0) throw DomainError("lag must be non-negative");
  if (R < 2) throw DomainError("nu_coefficient needs R >= 2");
  const int burn = std::max(model.burn_in(), 1);
  const auto n = static_cast<std::size_t>(j + burn + 1);  // times -burn .. j
  std::vector<double> powers(static_cast<std::size_t>(R));
  parallel_for(powers.size(), [&](std::size_t r) {
    Rng rng = make_rng(seed, r);
    Eigen::MatrixXd eps = draw_innovations(model.noise(), n, rng);
    const Eigen::VectorXd fresh = draw_innovations(model.noise(), 1, rng).row(0).transpose();
    const Eigen::MatrixXcd x = run_recursion(model, eps, burn);
    eps.row(burn) = fresh.transpose();  // time 0
    const Eigen::MatrixXcd xc = run_recursion(model, eps, burn);
    const Eigen::VectorXcd d = (x.row(j) - xc.row(j)).transpose();
    powers[r] = weighted_norm_pow(d, *model.grid(), p);
  });
  NuEstimate e = summarize({j}, p, powers);
  e.exact = nu_exact(model, j, p);
  return e;
}

NuEstimate nu_higher(const ProcessModel& model, const std::vector<int>& lags, int p, int R, std::uint64_t seed) {
  check_order(p);
  if (lags.size() > 3) throw DomainError("nu_higher supports at most three lags");
  if (R < 2) throw DomainError("nu_higher needs R >= 2");
  for (int j : lags)
    if (j < 0) throw DomainError("lags must be non-negative");
  int depth = tail_depth(model);
  for (int j : lags) depth = std::max(depth, j);
  const TimeZeroEvaluator eval(model);
  const std::size_t k = lags.size();
  std::vector<double> powers(static_cast<std::size_t>(R));
  parallel_for(powers.size(), [&](std::size_t r) {
    Rng rng = make_rng(seed, r);
    const Eigen::MatrixXd eps = draw_innovations(model.noise(), static_cast<std::size_t>(depth + 1), rng);
    const Eigen::MatrixXd alt = draw_innovations(model.noise(), static_cast<std::size_t>(depth + 1), rng);
    Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(eps.cols());
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
      std::set<int> replaced;
      for (std::size_t l = 0; l < k; ++l)
        if (mask & (std::size_t{1} << l)) replaced.insert(lags[l]);
      Eigen::MatrixXd e = eps;
      for (int s : replaced) e.row(s) = alt.row(s);
      const double sign = (std::popcount(mask) % 2) ? -1.0 : 1.0;
      acc += sign * eval(e);
    }
    powers[r] = weighted_norm_pow(acc, *model.grid(), p);
  });
  NuEstimate e = summarize(lags, p, powers);
  if (k == 1) e.exact = nu_exact(model, lags[0], p);
  return e;
}

}  // namespace fts
