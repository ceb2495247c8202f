#include "cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <regex>
#include <sstream>

#include "fts/cumulants.hpp"
#include "fts/dfpca.hpp"
#include "fts/errors.hpp"
#include "fts/estimators.hpp"
#include "fts/inference.hpp"
#include "fts/io.hpp"
#include "fts/parallel.hpp"
#include "fts/weights.hpp"

namespace fts::cli {

using nlohmann::json;

namespace {

constexpr double pi = std::numbers::pi;

json cjson(cplx z) { return json::array({z.real(), z.imag()}); }

json fit_json(const LinearFit& f) { return {{"slope", f.slope}, {"intercept", f.intercept}, {"slope_se", f.slope_se}}; }

std::vector<int> parse_ints(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok.erase(0, tok.find_first_not_of(" \t"));
    tok.erase(tok.find_last_not_of(" \t") + 1);
    if (tok.empty()) continue;
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) throw DomainError("expected an integer, got '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

// Artifacts written next to the report.
class Output {
 public:
  explicit Output(const RunConfig& c) : dir_(c.out), format_(c.format) {
    if (!dir_.empty()) {
      std::error_code ec;
      std::filesystem::create_directories(dir_, ec);
      if (ec || !std::filesystem::is_directory(dir_)) throw FormatError("cannot create output directory " + dir_);
    }
  }
  bool data() const { return !dir_.empty() && format_ != "json"; }
  std::string path(const std::string& stem) const {
    return (std::filesystem::path(dir_) / (stem + (format_ == "csv" ? ".csv" : ".fts"))).string();
  }
  void op(const std::string& stem, const HSOp& a) const {
    if (!data()) return;
    if (format_ == "csv")
      write_csv(path(stem), a);
    else
      write_array(path(stem), to_array(a));
  }
  void fn(const std::string& stem, const GridFn& f) const {
    if (!data()) return;
    if (format_ == "csv")
      write_csv(path(stem), f);
    else
      write_array(path(stem), to_array(f));
  }
  void tensor(const std::string& stem, const Tensor& t) const {
    if (!data()) return;
    if (format_ == "csv") {
      std::ofstream os(path(stem));
      if (!os) throw FormatError("cannot open " + path(stem));
      os << std::setprecision(17) << "offset,re,im\n";
      for (std::size_t i = 0; i < t.numel(); ++i) os << i << ',' << t.entries()[i].real() << ',' << t.entries()[i].imag() << '\n';
    } else {
      write_array(path(stem), to_array(t));
    }
  }
  void matrix(const std::string& stem, const GridPtr& g, const Eigen::MatrixXcd& m) const {
    if (!data()) return;
    if (format_ == "csv") {
      std::ofstream os(path(stem));
      if (!os) throw FormatError("cannot open " + path(stem));
      os << std::setprecision(17) << "row,index,x,re,im\n";
      for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index i = 0; i < m.cols(); ++i)
          os << r << ',' << i << ',' << g->point(static_cast<std::size_t>(i)) << ',' << m(r, i).real() << ','
             << m(r, i).imag() << '\n';
    } else {
      write_array(path(stem), to_array(g, m));
    }
  }
  void report(const json& j) const {
    if (dir_.empty()) return;
    std::ofstream os(std::filesystem::path(dir_) / "report.json");
    if (!os) throw FormatError("cannot write report.json in " + dir_);
    os << j.dump(2) << '\n';
  }

 private:
  std::string dir_;
  std::string format_;
};

struct Checks {
  std::vector<std::string> failures;
  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

EstimationConfig estimation(const RunConfig& c, std::size_t T, std::vector<double> freqs) {
  EstimationConfig e;
  e.window = window_by_name(c.window);
  e.bandwidth = parse_bandwidth_rule(c.bandwidth_rule)(T);
  e.frequencies = std::move(freqs);
  return e;
}

int default_R(const RunConfig& c, int fallback) { return c.R > 0 ? c.R : fallback; }

json cmd_simulate(const RunConfig& c, const ProcessModel& m, const Output& out, Checks&) {
  const SamplePath path = simulate(m, c.T, c.seed);
  out.matrix("series", path.grid, path.series);
  out.matrix("innovations", path.grid, path.innovations.cast<cplx>());
  double ss = 0.0;
  for (std::size_t t = 1; t <= path.T(); ++t) ss += std::pow(norm(path.X(t)), 2);
  return {{"T", path.T()},
          {"P", path.grid->size()},
          {"burn_in", path.burn_in},
          {"mean_sq_norm", ss / static_cast<double>(path.T())}};
}

json cmd_estimate(const RunConfig& c, const ProcessModel& m, const Output& out, Checks& checks) {
  const SamplePath path = simulate(m, c.T, c.seed);
  const EstimationConfig e = estimation(c, c.T, parse_frequencies(c.freqs.empty() ? "fourier" : c.freqs, c.T));
  const SpecEstimate s = lag_window_sdo(path, e);
  json rows = json::array();
  for (std::size_t f = 0; f < s.operators.size(); ++f) {
    const HSOp& F = s.operators[f];
    json r = {{"lambda", e.frequencies[f]},
              {"trace", cjson(trace(F))},
              {"hs_norm", hs_norm(F)},
              {"hermitian_defect", s.hermitian_defect[f]},
              {"min_eigenvalue", s.min_eigenvalue[f]}};
    if (c.smoothed) {
      const HSOp sp = smoothed_periodogram_sdo(path, e.window, e.bandwidth, e.frequencies[f]);
      r["smoothed_relative_distance"] = hs_norm(sp - F) / hs_norm(F);
    }
    if (m.linear()) r["relative_error"] = hs_norm(F - true_sdo(m, e.frequencies[f])) / hs_norm(true_sdo(m, e.frequencies[f]));
    checks.require(s.hermitian_defect[f] <= 1e-12, "estimate is not Hermitian at lambda = " + std::to_string(e.frequencies[f]));
    out.op("estimate_" + std::to_string(f), F);
    rows.push_back(r);
  }
  return {{"T", c.T}, {"bandwidth", e.bandwidth}, {"kappa", e.window.kappa}, {"frequencies", rows}};
}

json cmd_eigen(const RunConfig& c, const ProcessModel& m, const Output& out, Checks& checks) {
  const SamplePath path = simulate(m, c.T, c.seed);
  const EstimationConfig e = estimation(c, c.T, parse_frequencies(c.freqs.empty() ? "0" : c.freqs, c.T));
  const SpecEstimate s = lag_window_sdo(path, e);
  const auto count = static_cast<std::size_t>(std::clamp<int>(c.count, 1, static_cast<int>(m.grid()->size())));
  json rows = json::array();
  for (std::size_t f = 0; f < s.operators.size(); ++f) {
    const EigenSystem sys = eigendecompose(s.operators[f], count, e.frequencies[f]);
    json r = {{"lambda", e.frequencies[f]}, {"trace", cjson(sys.trace)}};
    r["eigenvalues"] = std::vector<double>(sys.values.data(), sys.values.data() + sys.values.size());
    for (std::size_t j = 0; j < sys.count(); ++j) out.fn("eigenfunction_" + std::to_string(f) + "_" + std::to_string(j), sys.functions[j]);
    if (m.linear()) {
      const HSOp F = true_sdo(m, e.frequencies[f]);
      const EigenSystem truth = eigendecompose(F, count, e.frequencies[f]);
      const double dev = max_eigenvalue_deviation(sys, truth);
      const double dist = hs_norm(s.operators[f] - F);
      r["max_eigenvalue_deviation"] = dev;
      r["hs_distance"] = dist;
      std::vector<double> pe;
      for (std::size_t j = 0; j < count; ++j) pe.push_back(projector_error(sys, truth, j));
      r["projector_errors"] = pe;
      r["true_eigengaps"] = json::array();
      for (std::size_t j = 0; j < count; ++j) r["true_eigengaps"].push_back(eigengap(truth, j));
      checks.require(dev <= dist + 1e-12 * (1.0 + hs_norm(F)), "eigenvalue deviation exceeds the HS distance");
    }
    rows.push_back(r);
  }
  return {{"T", c.T}, {"bandwidth", e.bandwidth}, {"frequencies", rows}};
}

json clt_json(const CltReport& rep) {
  json rows = json::array();
  for (const auto& f : rep.frequencies)
    rows.push_back({{"lambda", f.lambda},
                    {"gamma", cjson(f.gamma)},
                    {"sigma", cjson(f.sigma)},
                    {"var", f.var},
                    {"pseudo", cjson(f.pseudo)},
                    {"var_ratio", f.var_ratio},
                    {"var_ratio_kappa_sq", f.var_ratio_kappa_sq},
                    {"pseudo_error", f.pseudo_error},
                    {"skew_re", f.skew_re},
                    {"skew_im", f.skew_im},
                    {"kurt_re", f.kurt_re},
                    {"kurt_im", f.kurt_im},
                    {"ks_p_re", f.ks_p_re},
                    {"ks_p_im", f.ks_p_im},
                    {"median_im_over_re", f.median_im_over_re},
                    {"imaginary_degenerate", f.imaginary_degenerate}});
  return {{"T", rep.T},          {"R", rep.R},       {"bandwidth", rep.bandwidth}, {"kappa", rep.kappa},
          {"frequencies", rows}, {"cross_correlation", rep.cross_correlation}};
}

json cmd_mc(const RunConfig& c, const ProcessModel& m, const Output&, Checks& checks) {
  CltConfig cc;
  cc.T = c.T;
  cc.R = default_R(c, 500);
  cc.seed = c.seed;
  cc.long_run = c.long_run;
  cc.center_at_truth = c.center_at_truth;
  cc.estimation = estimation(c, c.T, parse_frequencies(c.freqs.empty() ? (c.long_run ? "0" : "0,pi/2") : c.freqs, c.T));
  const auto [u, v] = default_test_functions(m.grid());
  const CltReport rep = mc_clt(m, cc, u, v);
  for (auto& f : clt_failures(rep)) checks.failures.push_back(std::move(f));
  return clt_json(rep);
}

json cmd_rates(const RunConfig& c, const ProcessModel& m, const Output&, Checks& checks) {
  RateConfig rc;
  rc.window = window_by_name(c.window);
  rc.rule = parse_bandwidth_rule(c.bandwidth_rule);
  rc.ladder = parse_ladder(c.ladder.empty() ? "256,512,1024,2048,4096" : c.ladder);
  rc.R = default_R(c, 50);
  rc.seed = c.seed;
  rc.frequencies = parse_frequencies(c.freqs.empty() ? "0,pi/4,pi/2" : c.freqs, rc.ladder.front());
  rc.eigen = c.eigen;
  const RateReport rep = rate_regression(m, rc);
  json levels = json::array();
  for (const auto& l : rep.levels) {
    json j = {{"T", l.T}, {"bandwidth", l.bandwidth}, {"rmse", l.rmse}, {"var_rms", l.var_rms}, {"bias", l.bias}};
    if (c.eigen) {
      j["eigen_checks"] = l.eigen_checks;
      j["eigen_violations"] = l.eigen_violations;
      j["median_projector_error"] = l.median_projector_error;
      checks.require(l.eigen_violations == 0, "eigenvalue deviation exceeded the HS distance at T = " + std::to_string(l.T));
    }
    levels.push_back(j);
  }
  if (c.check_slopes) {
    checks.require(std::abs(rep.overall.slope - c.expect_slope) <= c.slope_tol,
                   "overall slope " + std::to_string(rep.overall.slope));
    checks.require(std::abs(rep.variance.slope - c.expect_var_slope) <= c.slope_tol,
                   "variance slope " + std::to_string(rep.variance.slope));
  }
  json r = {{"levels", levels},
            {"overall_slope", fit_json(rep.overall)},
            {"variance_slope", fit_json(rep.variance)},
            {"bias_slope", fit_json(rep.bias)}};
  if (c.eigen) r["min_true_eigengap"] = rep.min_gap;
  return r;
}

json nu_json(const NuEstimate& e) {
  json j = {{"lags", e.lags}, {"p", e.p}, {"R", e.R}, {"value", e.value}, {"se", e.se}};
  if (e.exact) j["exact"] = *e.exact;
  return j;
}

json cmd_cumulants(const RunConfig& c, const ProcessModel& m, const Output& out, Checks& checks) {
  const int R = default_R(c, 20000);
  if (c.mode == "cumulant" || c.mode == "moment") {
    const JointSample s = sample_joint(m, parse_ints(c.times), R, c.seed);
    if (c.mode == "moment") {
      const MomentTensor mt = moment_tensor(s);
      out.tensor("moment", mt.mean);
      return {{"times", mt.times}, {"R", mt.R}, {"hs_norm", hs_norm(mt.mean)}, {"hs_se", hs_norm(mt.se)}};
    }
    const CumTensor ct = cumulant(s, true);
    out.tensor("cumulant", ct.value);
    return {{"times", ct.times}, {"R", ct.R}, {"hs_norm", hs_norm(ct.value)}, {"hs_se", ct.hs_se}};
  }
  if (c.mode == "summability") {
    const int n = static_cast<int>(parse_ints(c.times).size());
    const SummabilityReport rep = cumulant_summability(m, n, c.radius, R, c.seed);
    json levels = json::array();
    for (const auto& l : rep.levels) {
      json j = {{"L", l.L}, {"partial_sum", l.partial_sum}, {"increment", l.increment}, {"noise", l.noise}};
      if (l.exact) j["exact"] = *l.exact;
      levels.push_back(j);
    }
    return {{"n", rep.n}, {"levels", levels}};
  }
  if (c.mode == "sufcon") {
    const SufconCheck s = sufcon_bound_check(m, c.k, c.J, c.p, R, c.seed);
    checks.require(s.holds, "sufcon bound violated");
    return {{"k", s.k}, {"J", s.J}, {"p", s.p}, {"lhs", s.lhs}, {"lhs_se", s.lhs_se},
            {"rhs", s.rhs}, {"rhs_se", s.rhs_se}, {"holds", s.holds}};
  }
  if (c.mode == "minbound") {
    const MinboundCheck mb = minbound_check(m, parse_ints(c.times), c.p, R, c.seed);
    checks.require(mb.holds, "minimum bound violated");
    json drops = json::array();
    for (const auto& d : mb.drops) drops.push_back(nu_json(d));
    return {{"value", nu_json(mb.value)}, {"drops", drops}, {"bound", mb.bound}, {"holds", mb.holds}};
  }
  throw DomainError("unknown cumulants mode '" + c.mode + "'");
}

json cmd_check_weights(const RunConfig& c, Checks& checks) {
  const Window w = window_by_name(c.window);
  const WeightDiagnostics d = check_weight_conditions(
      w, parse_bandwidth_rule(c.bandwidth_rule), parse_ladder(c.ladder.empty() ? "256,512,1024,2048,4096,8192" : c.ladder));
  json levels = json::array();
  for (const auto& v : d.ladder)
    levels.push_back({{"T", v.T},
                      {"bandwidth", v.bandwidth},
                      {"ratio_i", v.ratio_i},
                      {"ratio_ii", v.ratio_ii},
                      {"ratio_iii", v.ratio_iii},
                      {"ratio_iv", v.ratio_iv}});
  checks.require(d.i_bounded, "ratio (i) leaves [" + std::to_string(d.i_low) + ", " + std::to_string(d.i_high) + "]");
  checks.require(d.ii_decreasing, "ratio (ii) is not strictly decreasing");
  checks.require(d.iii_decreasing, "ratio (iii) is not strictly decreasing");
  checks.require(d.iv_decreasing, "ratio (iv) is not strictly decreasing");
  return {{"window", d.window},
          {"levels", levels},
          {"i_bounded", d.i_bounded},
          {"ii_decreasing", d.ii_decreasing},
          {"iii_decreasing", d.iii_decreasing},
          {"iv_decreasing", d.iv_decreasing},
          {"support_truncated", d.support_truncated}};
}

}  // namespace

json to_json(const RunConfig& c) {
  return {{"command", c.command},
          {"model", c.model},
          {"T", c.T},
          {"R", c.R},
          {"seed", c.seed},
          {"window", c.window},
          {"bandwidth_rule", c.bandwidth_rule},
          {"freqs", c.freqs},
          {"out", c.out},
          {"jobs", c.jobs},
          {"format", c.format},
          {"ladder", c.ladder},
          {"smoothed", c.smoothed},
          {"count", c.count},
          {"long_run", c.long_run},
          {"center_at_truth", c.center_at_truth},
          {"eigen", c.eigen},
          {"check_slopes", c.check_slopes},
          {"expect_slope", c.expect_slope},
          {"expect_var_slope", c.expect_var_slope},
          {"slope_tol", c.slope_tol},
          {"mode", c.mode},
          {"times", c.times},
          {"radius", c.radius},
          {"k", c.k},
          {"J", c.J},
          {"p", c.p}};
}

void apply_json(RunConfig& c, const json& j) {
  if (!j.is_object()) throw FormatError("config must be a JSON object");
  for (const auto& [key, v] : j.items()) {
    try {
      if (key == "command") c.command = v.get<std::string>();
      else if (key == "model") c.model = v.get<std::string>();
      else if (key == "T") c.T = v.get<std::size_t>();
      else if (key == "R") c.R = v.get<int>();
      else if (key == "seed") c.seed = v.get<std::uint64_t>();
      else if (key == "window") c.window = v.get<std::string>();
      else if (key == "bandwidth_rule") c.bandwidth_rule = v.get<std::string>();
      else if (key == "freqs") c.freqs = v.get<std::string>();
      else if (key == "out") c.out = v.get<std::string>();
      else if (key == "jobs") c.jobs = v.get<int>();
      else if (key == "format") c.format = v.get<std::string>();
      else if (key == "ladder") c.ladder = v.get<std::string>();
      else if (key == "smoothed") c.smoothed = v.get<bool>();
      else if (key == "count") c.count = v.get<int>();
      else if (key == "long_run") c.long_run = v.get<bool>();
      else if (key == "center_at_truth") c.center_at_truth = v.get<bool>();
      else if (key == "eigen") c.eigen = v.get<bool>();
      else if (key == "check_slopes") c.check_slopes = v.get<bool>();
      else if (key == "expect_slope") c.expect_slope = v.get<double>();
      else if (key == "expect_var_slope") c.expect_var_slope = v.get<double>();
      else if (key == "slope_tol") c.slope_tol = v.get<double>();
      else if (key == "mode") c.mode = v.get<std::string>();
      else if (key == "times") c.times = v.get<std::string>();
      else if (key == "radius") c.radius = v.get<int>();
      else if (key == "k") c.k = v.get<int>();
      else if (key == "J") c.J = v.get<int>();
      else if (key == "p") c.p = v.get<int>();
      else throw FormatError("unknown config key '" + key + "'");
    } catch (const json::exception& e) {
      throw FormatError("config key '" + key + "': " + e.what());
    }
  }
}

std::vector<double> parse_frequencies(const std::string& text, std::size_t T) {
  if (text == "fourier") return fourier_frequencies(T);
  static const std::regex num(R"(^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*$)");
  static const std::regex pis(R"(^\s*(?:([-+]?\d*\.?\d*)\s*\*?\s*)?pi\s*(?:/\s*(\d+\.?\d*))?\s*$)");
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::smatch m;
    if (std::regex_match(tok, m, num)) {
      out.push_back(std::stod(m[1]));
    } else if (std::regex_match(tok, m, pis)) {
      const std::string a = m[1];
      double v = pi;
      if (!a.empty() && a != "+") v *= (a == "-") ? -1.0 : std::stod(a);
      if (m[2].matched) v /= std::stod(m[2]);
      out.push_back(v);
    } else {
      throw DomainError("cannot parse frequency '" + tok + "'");
    }
  }
  if (out.empty()) throw DomainError("no frequencies given");
  return out;
}

std::vector<std::size_t> parse_ladder(const std::string& text) {
  std::vector<std::size_t> out;
  for (int v : parse_ints(text)) {
    if (v < 1) throw DomainError("sample sizes must be positive");
    out.push_back(static_cast<std::size_t>(v));
  }
  if (out.empty()) throw DomainError("empty ladder");
  return out;
}

int run(const RunConfig& config, std::ostream& os) {
  if (config.format != "json" && config.format != "csv" && config.format != "bin")
    throw DomainError("format must be csv, bin or json");
  if (config.jobs < 0) throw DomainError("--jobs must be non-negative");
  set_jobs(config.jobs);
  const auto start = std::chrono::steady_clock::now();
  const Output out(config);
  Checks checks;
  json results;
  if (config.command == "check-weights") {
    results = cmd_check_weights(config, checks);
  } else {
    if (config.model.empty()) throw DomainError("--model is required for '" + config.command + "'");
    const ProcessModel m = load_model(config.model);
    if (config.command == "simulate") results = cmd_simulate(config, m, out, checks);
    else if (config.command == "estimate") results = cmd_estimate(config, m, out, checks);
    else if (config.command == "eigen") results = cmd_eigen(config, m, out, checks);
    else if (config.command == "mc") results = cmd_mc(config, m, out, checks);
    else if (config.command == "rates") results = cmd_rates(config, m, out, checks);
    else if (config.command == "cumulants") results = cmd_cumulants(config, m, out, checks);
    else throw DomainError("unknown command '" + config.command + "'");
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  json report = {{"command", config.command},
                 {"version", FTS_VERSION_STRING},
                 {"seed", config.seed},
                 {"config", to_json(config)},
                 {"results", results},
                 {"checks", {{"passed", checks.failures.empty()}, {"failures", checks.failures}}},
                 {"timing", {{"seconds", seconds}}}};
  out.report(report);
  os << report.dump(2) << '\n';
  return checks.failures.empty() ? exit_ok : exit_check_failed;
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Frequency-domain analysis of functional time series"};
  app.require_subcommand(1);
  RunConfig c;
  std::string config_path;
  const auto common = [&](CLI::App* s) {
    s->add_option("--model", c.model, "model file");
    s->add_option("--T", c.T, "series length");
    s->add_option("--R", c.R, "Monte Carlo replicates");
    s->add_option("--seed", c.seed, "random seed");
    s->add_option("--window", c.window, "bartlett | parzen | tukey_hanning | flat_top | truncated");
    s->add_option("--bandwidth-rule", c.bandwidth_rule, "e.g. T^-1/3, 0.5*T^-0.4, const:0.1");
    s->add_option("--freqs", c.freqs, "comma list such as 0,pi/2 or 'fourier'");
    s->add_option("--out", c.out, "output directory");
    s->add_option("--jobs", c.jobs, "worker threads (0 = all)");
    s->add_option("--format", c.format, "csv | bin | json")->check(CLI::IsMember({"csv", "bin", "json"}));
    s->add_option("--ladder", c.ladder, "comma list of sample sizes");
    s->add_option("--config", config_path, "JSON config; its values win over flags");
  };
  auto* sim = app.add_subcommand("simulate", "simulate a sample path");
  common(sim);
  auto* est = app.add_subcommand("estimate", "lag-window spectral density estimate");
  common(est);
  est->add_flag("--smoothed", c.smoothed, "also compute the smoothed periodogram and report the distance");
  auto* mc = app.add_subcommand("mc", "Monte Carlo check of the limit law");
  common(mc);
  mc->add_flag("--long-run", c.long_run, "estimate 2 pi F at frequency 0 instead");
  mc->add_flag("--center-at-truth", c.center_at_truth, "center at the true operator");
  auto* rates = app.add_subcommand("rates", "consistency rates over a ladder of T");
  common(rates);
  rates->add_flag("--eigen", c.eigen, "eigen-consistency diagnostics on every replicate");
  auto* slope = rates->add_option("--expect-slope", c.expect_slope, "expected log-log RMSE slope");
  rates->add_option("--expect-var-slope", c.expect_var_slope, "expected variance slope on log(bT)");
  rates->add_option("--slope-tol", c.slope_tol, "slope tolerance");
  auto* cum = app.add_subcommand("cumulants", "cumulant tensors and dependence bounds");
  common(cum);
  cum->add_option("--mode", c.mode, "cumulant | moment | summability | sufcon | minbound")
      ->check(CLI::IsMember({"cumulant", "moment", "summability", "sufcon", "minbound"}));
  cum->add_option("--times", c.times, "time indices (cumulant, moment), lags (minbound) or order via count (summability)");
  cum->add_option("--radius", c.radius, "summability lag radius");
  cum->add_option("--k", c.k, "sufcon order");
  cum->add_option("--J", c.J, "sufcon truncation");
  cum->add_option("--p", c.p, "moment order of dependence coefficients (2 or 4)");
  auto* cw = app.add_subcommand("check-weights", "weight-condition diagnostics");
  common(cw);
  auto* eig = app.add_subcommand("eigen", "dynamic principal components of the estimate");
  common(eig);
  eig->add_option("--count", c.count, "number of eigenpairs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }
  c.command = app.get_subcommands().front()->get_name();
  c.check_slopes = slope->count() > 0;
  try {
    if (!config_path.empty()) {
      std::ifstream is(config_path);
      if (!is) throw FormatError("cannot open config " + config_path);
      json j;
      try {
        j = json::parse(is);
      } catch (const json::exception& e) {
        throw FormatError(std::string("config is not valid JSON: ") + e.what());
      }
      apply_json(c, j);
      if (j.contains("expect_slope")) c.check_slopes = true;
    }
    return run(c, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  }
}

}  // namespace fts::cli
