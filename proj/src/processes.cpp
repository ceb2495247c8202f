#include "fts/processes.hpp"

#include <cmath>
#include <numbers>

#include "fts/errors.hpp"

namespace fts {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

void require_closed_form(const ProcessModel& model, const char* what) {
  if (!model.linear()) throw UnsupportedError(std::string(what) + ": no closed form for bilinear1");
}

}  // namespace

GridFn SamplePath::X(std::size_t t) const {
  if (t < 1 || t > T()) throw DomainError("SamplePath::X: time index out of range");
  return GridFn(grid, series.row(static_cast<Eigen::Index>(t - 1)).transpose());
}

Eigen::VectorXd SamplePath::eps(long t) const {
  const long r = t + burn_in - 1;
  if (r < 0 || r >= innovations.rows()) throw DomainError("SamplePath::eps: innovation not retained");
  return innovations.row(r).transpose();
}

Eigen::MatrixXd draw_innovations(const NoiseModel& noise, std::size_t n, Rng& rng) {
  const Eigen::MatrixXd& modes = noise.modes();
  const auto K = modes.cols();
  Eigen::MatrixXd xi(static_cast<Eigen::Index>(n), K);
  if (noise.distribution() == NoiseDistribution::gaussian) {
    std::normal_distribution<double> nd(0.0, 1.0);
    for (Eigen::Index i = 0; i < xi.rows(); ++i)
      for (Eigen::Index k = 0; k < K; ++k) xi(i, k) = nd(rng);
  } else {
    std::uniform_real_distribution<double> ud(-std::sqrt(3.0), std::sqrt(3.0));
    for (Eigen::Index i = 0; i < xi.rows(); ++i)
      for (Eigen::Index k = 0; k < K; ++k) xi(i, k) = ud(rng);
  }
  return xi * modes.transpose();
}

Eigen::MatrixXcd run_recursion(const ProcessModel& model, const Eigen::MatrixXd& eps, int burn_in) {
  const Eigen::Index n = eps.rows();
  const Eigen::Index T = n - burn_in;
  if (burn_in < 0 || T < 0) throw DomainError("run_recursion: burn-in exceeds innovation count");
  const Eigen::Index P = eps.cols();
  Eigen::MatrixXcd out(T, P);
  switch (model.kind()) {
    case ModelKind::white:
      out = eps.bottomRows(T).cast<cplx>();
      break;
    case ModelKind::far1: {
      // Row form of x_t = R x_{t-1} + e_t.
      const Eigen::MatrixXcd Rt = model.rho().action().transpose();
      Eigen::RowVectorXcd x = Eigen::RowVectorXcd::Zero(P);
      for (Eigen::Index r = 0; r < n; ++r) {
        x = x * Rt + eps.row(r).cast<cplx>();
        if (r >= burn_in) out.row(r - burn_in) = x;
      }
      break;
    }
    case ModelKind::maq: {
      const auto& b = model.b();
      const auto q = static_cast<Eigen::Index>(b.size()) - 1;
      if (burn_in < q) throw DomainError("maq needs burn-in >= q");
      out.setZero();
      for (Eigen::Index j = 0; j <= q; ++j) {
        const Eigen::MatrixXcd Bt = b[static_cast<std::size_t>(j)].action().transpose();
        out += eps.middleRows(burn_in - j, T).cast<cplx>() * Bt;
      }
      break;
    }
    case ModelKind::bilinear1: {
      if (burn_in < 1) throw DomainError("bilinear1 needs burn-in >= 1");
      const Eigen::MatrixXcd At = model.a().action().transpose();
      const Eigen::MatrixXcd Ct = model.c().action().transpose();
      const Eigen::MatrixXcd cur = eps.bottomRows(T).cast<cplx>();
      const Eigen::MatrixXcd prev = eps.middleRows(burn_in - 1, T).cast<cplx>();
      out = cur * At + (prev * Ct).cwiseProduct(cur);
      break;
    }
  }
  return out;
}

SamplePath simulate(const ProcessModel& model, std::size_t T, std::uint64_t seed, int burn_in) {
  if (T < 1) throw DomainError("simulate: T must be at least 1");
  const int burn = burn_in >= 0 ? burn_in : model.burn_in();
  if (model.kind() != ModelKind::far1 && burn < model.memory())
    throw DomainError("simulate: burn-in shorter than the model memory");
  Rng rng(seed);
  SamplePath path;
  path.grid = model.grid();
  path.seed = seed;
  path.burn_in = burn;
  path.innovations = draw_innovations(model.noise(), T + static_cast<std::size_t>(burn), rng);
  path.series = run_recursion(model, path.innovations, burn);
  return path;
}

HSOp true_cov(const ProcessModel& model, int h) {
  require_closed_form(model, "true_cov");
  if (h < 0) return adjoint(true_cov(model, -h));
  const HSOp& C = model.noise().effective_covariance();
  switch (model.kind()) {
    case ModelKind::white:
      return h == 0 ? C : HSOp::zero(model.grid());
    case ModelKind::far1: {
      const HSOp& rho = model.rho();
      HSOp C0 = C;
      HSOp term = C;
      for (int it = 0; it < 100000; ++it) {
        term = kron_apply(rho, rho, term);
        C0 = C0 + term;
        if (hs_norm(term) < 1e-12) break;
      }
      C0 = HSOp::hermitian_part(C0);
      return h == 0 ? C0 : compose(power(rho, h), C0);
    }
    case ModelKind::maq: {
      const auto& b = model.b();
      HSOp acc = HSOp::zero(model.grid());
      for (std::size_t j = 0; j + static_cast<std::size_t>(h) < b.size(); ++j)
        acc = acc + kron_apply(b[j + static_cast<std::size_t>(h)], b[j], C);
      return h == 0 ? HSOp::hermitian_part(acc) : acc;
    }
    case ModelKind::bilinear1: break;
  }
  throw UnsupportedError("true_cov: unsupported model");
}

HSOp true_sdo(const ProcessModel& model, double lambda) {
  require_closed_form(model, "true_sdo");
  const HSOp& C = model.noise().effective_covariance();
  const GridPtr& g = model.grid();
  HSOp out = HSOp::zero(g);
  switch (model.kind()) {
    case ModelKind::white:
      out = C * (1.0 / two_pi);
      break;
    case ModelKind::far1: {
      const HSOp resolvent =
          inverse(HSOp::identity(g) - model.rho() * std::exp(cplx(0.0, -lambda)));
      out = kron_apply(resolvent, resolvent, C) * (1.0 / two_pi);
      break;
    }
    case ModelKind::maq: {
      HSOp B = HSOp::zero(g);
      for (std::size_t j = 0; j < model.b().size(); ++j)
        B = B + model.b()[j] * std::exp(cplx(0.0, -lambda * static_cast<double>(j)));
      out = kron_apply(B, B, C) * (1.0 / two_pi);
      break;
    }
    case ModelKind::bilinear1: break;
  }
  return HSOp::hermitian_part(out);
}

SamplePath mdep_truncate(const ProcessModel& model, const SamplePath& path, int m) {
  require_closed_form(model, "mdep_truncate");
  if (m < 0) throw DomainError("mdep_truncate: m must be non-negative");
  if (m > path.burn_in) throw DomainError("mdep_truncate: path keeps only burn_in past innovations");
  SamplePath out = path;
  const auto T = static_cast<Eigen::Index>(path.T());
  out.series.setZero();
  for (int j = 0; j <= m; ++j) {
    const Eigen::MatrixXcd Bt = model.linear_coefficient(j).action().transpose();
    out.series += path.innovations.middleRows(path.burn_in - j, T).cast<cplx>() * Bt;
  }
  return out;
}

HSOp d_operator(const ProcessModel& model, int m, double lambda) {
  require_closed_form(model, "d_operator");
  if (m < 0) throw DomainError("d_operator: m must be non-negative");
  HSOp B = HSOp::zero(model.grid());
  const int top = model.memory() < 0 ? m : std::min(m, model.memory());
  for (int t = 0; t <= top; ++t)
    B = B + model.linear_coefficient(t) * std::exp(cplx(0.0, -lambda * t));
  return B * (1.0 / std::sqrt(two_pi));
}

GridFn d_process(const ProcessModel& model, int m, double lambda, const GridFn& eps_k) {
  return apply(d_operator(model, m, lambda), eps_k);
}

HSOp d_variance(const ProcessModel& model, int m, double lambda) {
  const HSOp B = d_operator(model, m, lambda);
  return HSOp::hermitian_part(kron_apply(B, B, model.noise().effective_covariance()));
}

}  // namespace fts
