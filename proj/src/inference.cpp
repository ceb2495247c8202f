#include "fts/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fts/dfpca.hpp"
#include "fts/errors.hpp"
#include "fts/parallel.hpp"
#include "fts/rng.hpp"

namespace fts {

namespace {

constexpr double pi = std::numbers::pi;

// <A f, g>
cplx form(const HSOp& a, const GridFn& f, const GridFn& g) { return inner(apply(a, f), g); }

std::vector<double> logs(const std::vector<double>& v) {
  std::vector<double> out;
  for (double x : v) {
    if (!(x > 0.0)) throw NumericalError("cannot take the log of a non-positive value in a rate fit");
    out.push_back(std::log(x));
  }
  return out;
}

EstimationConfig make_config(const Window& window, double b, std::vector<double> freqs, Centering c) {
  EstimationConfig cfg;
  cfg.window = window;
  cfg.bandwidth = b;
  cfg.frequencies = std::move(freqs);
  cfg.center = c;
  return cfg;
}

}  // namespace

bool real_frequency(double lambda) {
  return std::abs(lambda) < 1e-12 || std::abs(std::abs(lambda) - pi) < 1e-12;
}

LimitCov limit_cov(const HSOp& F, double lambda, double kappa, const GridFn& u, const GridFn& v, const GridFn& u2,
                   const GridFn& v2) {
  if (!(kappa > 0.0)) throw DomainError("kappa must be positive");
  const auto g = [&](const GridFn& a, const GridFn& b) { return form(F, b.conj(), a); };
  LimitCov out;
  out.gamma = form(F, u2, u) * form(F, v, v2);
  out.sigma = form(F, v2, u) * form(F, v, u2);
  if (real_frequency(lambda)) {
    out.gamma += g(u, v2) * std::conj(g(v, u2));
    out.sigma += g(u, u2) * std::conj(g(v, v2));
  }
  out.gamma *= kappa;
  out.sigma *= kappa;
  return out;
}

std::pair<GridFn, GridFn> default_test_functions(const GridPtr& grid) {
  return {GridFn::from_function(grid, [](double x) { return cplx(1.0 + x); }),
          GridFn::from_function(grid, [](double x) { return cplx(std::cos(3.0 * x)); })};
}

CltReport mc_clt(const ProcessModel& model, const CltConfig& config, const GridFn& u, const GridFn& v) {
  if (config.R < 3) throw DomainError("mc_clt needs R >= 3");
  const auto& est = config.estimation;
  validate(est, config.T);
  const std::size_t nf = est.frequencies.size();
  const auto R = static_cast<std::size_t>(config.R);
  const double scale = std::sqrt(est.bandwidth * static_cast<double>(config.T));
  // long-run mode estimates 2 pi F^0, so projections and limits scale by 2 pi
  const double lr = config.long_run ? 2.0 * pi : 1.0;
  if (config.long_run && (nf != 1 || est.frequencies[0] != 0.0))
    throw DomainError("long-run CLT runs at the single frequency 0");

  std::vector<std::vector<cplx>> proj(nf, std::vector<cplx>(R));
  parallel_for(R, [&](std::size_t r) {
    const SamplePath path = simulate(model, config.T, stream_seed(config.seed, r));
    if (config.long_run) {
      proj[0][r] = form(long_run_cov(path, est), v, u);
      return;
    }
    const SpecEstimate s = lag_window_sdo(path, est);
    for (std::size_t f = 0; f < nf; ++f) proj[f][r] = form(s.operators[f], v, u);
  });

  CltReport rep;
  rep.T = config.T;
  rep.R = config.R;
  rep.seed = config.seed;
  rep.bandwidth = est.bandwidth;
  rep.kappa = est.window.kappa;
  for (std::size_t f = 0; f < nf; ++f) {
    const double lambda = est.frequencies[f];
    const HSOp F = true_sdo(model, lambda);
    CltFrequency cf;
    cf.lambda = lambda;
    const LimitCov lc = limit_cov(F, lambda, rep.kappa, u, v, u, v);
    cf.gamma = lc.gamma * (lr * lr);
    cf.sigma = lc.sigma * (lr * lr);
    cplx ref = 0.0;
    if (config.center_at_truth) {
      ref = lr * form(F, v, u);
    } else {
      for (cplx p : proj[f]) ref += p;
      ref /= static_cast<double>(R);
    }
    std::vector<double> re, im, ratio;
    cplx pseudo = 0.0;
    double var = 0.0;
    for (cplx p : proj[f]) {
      const cplx z = scale * (p - ref);
      cf.z.push_back(z);
      re.push_back(z.real());
      im.push_back(z.imag());
      var += std::norm(z);
      pseudo += z * z;
      if (z.real() != 0.0) ratio.push_back(std::abs(z.imag()) / std::abs(z.real()));
    }
    cf.var = var / static_cast<double>(R);
    cf.pseudo = pseudo / static_cast<double>(R);
    const double gam = cf.gamma.real();
    cf.var_ratio = cf.var / gam;
    cf.pseudo_error = std::abs(cf.pseudo - cf.sigma) / gam;
    cf.var_ratio_kappa_sq = cf.var / (gam * rep.kappa);
    cf.skew_re = skewness(re);
    cf.kurt_re = excess_kurtosis(re);
    cf.ks_p_re = ks_normal(re).p_value;
    double im_scale = 0.0;
    for (double x : im) im_scale = std::max(im_scale, std::abs(x));
    double re_scale = 0.0;
    for (double x : re) re_scale = std::max(re_scale, std::abs(x));
    cf.imaginary_degenerate = im_scale <= 1e-9 * std::max(re_scale, 1e-300);
    if (!cf.imaginary_degenerate) {
      cf.skew_im = skewness(im);
      cf.kurt_im = excess_kurtosis(im);
      cf.ks_p_im = ks_normal(im).p_value;
    }
    cf.median_im_over_re = ratio.empty() ? 0.0 : median(ratio);
    rep.frequencies.push_back(std::move(cf));
  }
  for (std::size_t i = 0; i < nf; ++i)
    for (std::size_t j = i + 1; j < nf; ++j) {
      cplx c = 0.0;
      const auto& zi = rep.frequencies[i].z;
      const auto& zj = rep.frequencies[j].z;
      for (std::size_t r = 0; r < R; ++r) c += zi[r] * std::conj(zj[r]);
      c /= static_cast<double>(R);
      rep.cross_correlation.push_back(std::abs(c) /
                                      std::sqrt(rep.frequencies[i].var * rep.frequencies[j].var));
    }
  return rep;
}

std::vector<std::string> clt_failures(const CltReport& report, const CltTolerances& tol) {
  std::vector<std::string> out;
  const auto add = [&](const CltFrequency& f, const std::string& what, double value) {
    out.push_back("lambda=" + std::to_string(f.lambda) + ": " + what + " = " + std::to_string(value));
  };
  for (const auto& f : report.frequencies) {
    if (!(std::abs(f.var_ratio - 1.0) <= tol.var_rel)) add(f, "variance ratio", f.var_ratio);
    if (!(f.pseudo_error <= tol.pseudo_abs)) add(f, "pseudocovariance error", f.pseudo_error);
    if (!(std::abs(f.skew_re) < tol.skew)) add(f, "Re skewness", f.skew_re);
    if (!(std::abs(f.kurt_re) < tol.kurt)) add(f, "Re excess kurtosis", f.kurt_re);
    if (!f.imaginary_degenerate) {
      if (!(std::abs(f.skew_im) < tol.skew)) add(f, "Im skewness", f.skew_im);
      if (!(std::abs(f.kurt_im) < tol.kurt)) add(f, "Im excess kurtosis", f.kurt_im);
    }
    if (real_frequency(f.lambda) && !(f.median_im_over_re < tol.im_over_re))
      add(f, "median |Im|/|Re|", f.median_im_over_re);
  }
  const double bound = tol.cross_corr_sigmas / std::sqrt(static_cast<double>(report.R));
  for (std::size_t k = 0; k < report.cross_correlation.size(); ++k)
    if (!(report.cross_correlation[k] < bound))
      out.push_back("cross-frequency correlation #" + std::to_string(k) + " = " +
                    std::to_string(report.cross_correlation[k]));
  return out;
}

RateReport rate_regression(const ProcessModel& model, const RateConfig& config) {
  if (config.ladder.size() < 2) throw DomainError("rate regression needs at least two sample sizes");
  if (config.R < 2) throw DomainError("rate regression needs R >= 2");
  if (config.frequencies.empty()) throw DomainError("rate regression needs frequencies");
  const auto R = static_cast<std::size_t>(config.R);
  const std::size_t nf = config.frequencies.size();

  std::vector<HSOp> truth;
  std::vector<EigenSystem> truth_eig;
  RateReport rep;
  rep.min_gap = std::numeric_limits<double>::infinity();
  for (double lambda : config.frequencies) {
    truth.push_back(true_sdo(model, lambda));
    if (config.eigen) {
      truth_eig.push_back(eigendecompose(truth.back(), 0, lambda));
      rep.min_gap = std::min(rep.min_gap, eigengap(truth_eig.back(), 0));
    }
  }
  if (!config.eigen) rep.min_gap = 0.0;

  std::vector<double> logT, rmse, logbT, var_rms, bias;
  for (std::size_t level = 0; level < config.ladder.size(); ++level) {
    const std::size_t T = config.ladder[level];
    const double b = config.rule(T);
    const EstimationConfig cfg = make_config(config.window, b, config.frequencies, Centering::known_zero_mean);
    validate(cfg, T);
    std::vector<std::vector<Eigen::MatrixXcd>> est(R);
    std::vector<std::vector<double>> proj_err(R, std::vector<double>(nf, 0.0));
    std::vector<int> violations(R, 0);
    parallel_for(R, [&](std::size_t r) {
      const SamplePath path = simulate(model, T, stream_seed(stream_seed(config.seed, T), r));
      const SpecEstimate s = lag_window_sdo(path, cfg);
      for (std::size_t f = 0; f < nf; ++f) {
        est[r].push_back(s.operators[f].kernel());
        if (!config.eigen) continue;
        const EigenSystem e = eigendecompose(s.operators[f], 0, config.frequencies[f]);
        const double dist = hs_norm(s.operators[f] - truth[f]);
        const double dev = max_eigenvalue_deviation(e, truth_eig[f]);
        if (dev > dist + 1e-12 * (1.0 + hs_norm(truth[f]))) ++violations[r];
        proj_err[r][f] = projector_error(e, truth_eig[f], 0);
      }
    });

    RateLevel lv;
    lv.T = T;
    lv.bandwidth = b;
    double sq = 0.0, vq = 0.0, bq = 0.0;
    for (std::size_t f = 0; f < nf; ++f) {
      Eigen::MatrixXcd mean_k = Eigen::MatrixXcd::Zero(truth[f].kernel().rows(), truth[f].kernel().cols());
      for (std::size_t r = 0; r < R; ++r) mean_k += est[r][f];
      mean_k /= static_cast<double>(R);
      const HSOp mean_op(truth[f].grid(), mean_k);
      bq += std::pow(hs_norm(mean_op - truth[f]), 2);
      for (std::size_t r = 0; r < R; ++r) {
        const HSOp e(truth[f].grid(), est[r][f]);
        sq += std::pow(hs_norm(e - truth[f]), 2);
        vq += std::pow(hs_norm(e - mean_op), 2);
      }
    }
    lv.rmse = std::sqrt(sq / static_cast<double>(R * nf));
    lv.var_rms = std::sqrt(vq / static_cast<double>((R - 1) * nf));
    lv.bias = std::sqrt(bq / static_cast<double>(nf));
    if (config.eigen) {
      std::vector<double> pe;
      for (std::size_t r = 0; r < R; ++r) {
        lv.eigen_violations += violations[r];
        for (double x : proj_err[r]) pe.push_back(x);
      }
      lv.eigen_checks = static_cast<int>(R * nf);
      lv.median_projector_error = median(pe);
    }
    rep.levels.push_back(lv);
    logT.push_back(std::log(static_cast<double>(T)));
    logbT.push_back(std::log(b * static_cast<double>(T)));
    rmse.push_back(lv.rmse);
    var_rms.push_back(lv.var_rms);
    bias.push_back(lv.bias);
  }
  rep.overall = ols(logT, logs(rmse));
  rep.variance = ols(logbT, logs(var_rms));
  rep.bias = ols(logT, logs(bias));
  return rep;
}

CenteringReport centering_check(const ProcessModel& model, const Window& window, const BandwidthRule& rule,
                                const std::vector<std::size_t>& ladder, int R, std::uint64_t seed, double lambda) {
  if (ladder.size() < 2) throw DomainError("centering check needs at least two sample sizes");
  if (R < 1) throw DomainError("centering check needs R >= 1");
  CenteringReport rep;
  std::vector<double> x, y;
  for (std::size_t T : ladder) {
    const double b = rule(T);
    const EstimationConfig known = make_config(window, b, {lambda}, Centering::known_zero_mean);
    const EstimationConfig meanc = make_config(window, b, {lambda}, Centering::sample_mean);
    std::vector<double> d2(static_cast<std::size_t>(R));
    parallel_for(d2.size(), [&](std::size_t r) {
      const SamplePath path = simulate(model, T, stream_seed(stream_seed(seed, T), r));
      d2[r] = std::pow(
          hs_norm(lag_window_sdo(path, known).operators[0] - lag_window_sdo(path, meanc).operators[0]), 2);
    });
    CenteringLevel lv{T, b, std::sqrt(mean(d2))};
    rep.levels.push_back(lv);
    x.push_back(std::log(b * static_cast<double>(T)));
    y.push_back(lv.rms_distance);
  }
  rep.fit = ols(x, logs(y));
  return rep;
}

HSOp expected_periodogram(const ProcessModel& model, std::size_t T, double lambda) {
  if (!model.linear()) throw UnsupportedError("expected periodogram needs a linear model");
  if (T < 1) throw DomainError("T must be positive");
  HSOp c = true_cov(model, 0);
  const double c0 = hs_norm(c);
  HSOp acc = c;
  for (std::size_t h = 1; h < T; ++h) {
    const int hi = static_cast<int>(h);
    if (model.memory() >= 0 && hi > model.memory()) break;
    c = model.kind() == ModelKind::far1 ? compose(model.rho(), c) : true_cov(model, hi);
    if (model.kind() == ModelKind::far1 && hs_norm(c) < 1e-17 * c0) break;
    const HSOp term = c * (std::polar(1.0 - static_cast<double>(h) / static_cast<double>(T), -lambda * h));
    acc = acc + term + adjoint(term);
  }
  return HSOp::hermitian_part(acc * (1.0 / (2.0 * pi)));
}

std::vector<FdftLevel> var_fdft_check(const ProcessModel& model, double lambda,
                                      const std::vector<std::size_t>& ladder, int R, std::uint64_t seed) {
  if (R < 2) throw DomainError("fDFT check needs R >= 2");
  const HSOp F = true_sdo(model, lambda);
  const auto& g = model.grid();
  std::vector<FdftLevel> out;
  for (std::size_t T : ladder) {
    std::vector<Eigen::MatrixXcd> outer(static_cast<std::size_t>(R));
    parallel_for(outer.size(), [&](std::size_t r) {
      const GridFn d = fdft(simulate(model, T, stream_seed(stream_seed(seed, T), r)), lambda);
      outer[r] = d.values() * d.values().adjoint();
    });
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(F.kernel().rows(), F.kernel().cols());
    for (const auto& o : outer) m += o;
    m /= static_cast<double>(R);
    const HSOp mean_op(g, m);
    double s = 0.0;
    for (const auto& o : outer) s += std::pow(hs_norm(HSOp(g, o) - mean_op), 2);
    FdftLevel lv;
    lv.T = T;
    lv.error = hs_norm(mean_op - F);
    lv.noise_floor = std::sqrt(s / (static_cast<double>(R) * static_cast<double>(R - 1)));
    lv.bias = hs_norm(expected_periodogram(model, T, lambda) - F);
    out.push_back(lv);
  }
  return out;
}

DProcessReport dprocess_diagnostics(const ProcessModel& model, const std::vector<int>& m_ladder, double lambda,
                                    std::size_t n, std::uint64_t seed) {
  if (!model.linear()) throw UnsupportedError("D-process diagnostics need a linear model");
  if (n < 10) throw DomainError("D-process diagnostics need n >= 10");
  const auto& g = model.grid();
  const auto u = default_test_functions(g).first;
  const Eigen::Index P = static_cast<Eigen::Index>(g->size());
  Eigen::VectorXd w(P);
  for (Eigen::Index i = 0; i < P; ++i) w(i) = g->weight(static_cast<std::size_t>(i));
  // <f, u> = sum_i w_i f_i conj(u_i)
  const Eigen::VectorXcd uw = w.cast<cplx>().cwiseProduct(u.values().conjugate());

  DProcessReport rep;
  rep.lambda = lambda;
  rep.n = n;
  rep.trace_truth = trace(true_sdo(model, lambda)).real();
  for (std::size_t idx = 0; idx < m_ladder.size(); ++idx) {
    const int m = m_ladder[idx];
    if (m < 0) throw DomainError("m must be non-negative");
    ProcessModel mm = model;
    mm.set_burn_in(std::max(model.burn_in(), m));
    const SamplePath path = simulate(mm, n, stream_seed(seed, idx));
    const HSOp B = d_operator(model, m, lambda);
    const Eigen::MatrixXcd Bw = B.kernel() * w.asDiagonal();
    // row k-1 holds D_k = B eps_k
    Eigen::MatrixXcd eps(static_cast<Eigen::Index>(n), P);
    for (std::size_t k = 1; k <= n; ++k) eps.row(static_cast<Eigen::Index>(k - 1)) = path.eps(static_cast<long>(k)).transpose().cast<cplx>();
    const Eigen::MatrixXcd D = eps * Bw.transpose();

    DProcessLevel lv;
    lv.m = m;
    std::vector<double> sq(n);
    for (std::size_t k = 0; k < n; ++k)
      sq[k] = (D.row(static_cast<Eigen::Index>(k)).cwiseAbs2() * w).value();
    lv.trace_mc = mean(sq);
    lv.trace_mc_se = std::sqrt(variance(sq) / static_cast<double>(n));
    lv.trace_closed = trace(d_variance(model, m, lambda)).real();

    const Eigen::Index N = static_cast<Eigen::Index>(n) - 1;
    const Eigen::VectorXcd dp = D * uw;
    const Eigen::VectorXcd xp = path.series * uw;
    Eigen::MatrixXcd X(N, 2);
    X.col(0) = dp.head(N);
    X.col(1) = xp.head(N);
    lv.regression = complex_ols(dp.tail(N), X);
    rep.levels.push_back(lv);
  }
  return rep;
}

}  // namespace fts
