#include "fts/model.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "fts/errors.hpp"
#include "fts/io.hpp"

namespace fts {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<double> parse_numbers(const std::string& s, const std::string& what) {
  std::string t = s;
  std::replace(t.begin(), t.end(), ',', ' ');
  std::istringstream is(t);
  std::vector<double> out;
  std::string tok;
  while (is >> tok) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) throw DomainError(what + ": not a number: '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

double parse_number(const std::string& s, const std::string& what) {
  const auto v = parse_numbers(s, what);
  if (v.size() != 1) throw DomainError(what + ": expected a single number");
  return v[0];
}

}  // namespace

// --- noise ---------------------------------------------------------------------

NoiseModel::NoiseModel(HSOp covariance, NoiseDistribution distribution, int rank_cap)
    : covariance_(HSOp(covariance.grid(), covariance.kernel(), true)),
      effective_(HSOp::zero(covariance.grid())),
      distribution_(distribution),
      rank_cap_(rank_cap) {
  if (rank_cap_ < 1) throw DomainError("noise rank cap must be positive");
  const auto& g = *covariance_.grid();
  const auto P = static_cast<Eigen::Index>(g.size());
  Eigen::VectorXd sw(P);
  for (Eigen::Index i = 0; i < P; ++i) sw(i) = std::sqrt(g.weight(static_cast<std::size_t>(i)));

  Eigen::VectorXd beta;
  Eigen::MatrixXd vecs;
  const Eigen::MatrixXcd S = covariance_.symmetrized();
  if (S.imag().cwiseAbs().maxCoeff() > 0.0)
    throw DomainError("noise covariance must be real (real-valued innovations)");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S.real());
  beta = es.eigenvalues().reverse();
  vecs = es.eigenvectors().rowwise().reverse();

  const double scale = std::max(1.0, beta.cwiseAbs().maxCoeff());
  if (beta.minCoeff() < -1e-12 * scale)
    throw DomainError("noise covariance is not non-negative definite");
  const Eigen::Index K = std::min<Eigen::Index>(rank_cap_, P);
  modes_.resize(P, K);
  for (Eigen::Index k = 0; k < K; ++k) {
    const double b = std::max(0.0, beta(k));
    Eigen::VectorXd phi = vecs.col(k).cwiseQuotient(sw);
    Eigen::Index imax = 0;
    phi.cwiseAbs().maxCoeff(&imax);
    if (phi(imax) < 0.0) phi = -phi;
    modes_.col(k) = std::sqrt(b) * phi;
  }
  const Eigen::MatrixXd eff = modes_ * modes_.transpose();
  effective_ = HSOp(covariance_.grid(), eff.cast<cplx>(), true);
}

GridFn basis_function(const GridPtr& grid, const std::string& basis, int k) {
  if (k < 0) throw DomainError("basis index must be non-negative");
  constexpr double pi = std::numbers::pi;
  if (basis == "fourier") {
    if (k == 0) return GridFn::constant(grid, 1.0);
    const int f = (k + 1) / 2;
    const bool cosine = (k % 2) == 1;
    return GridFn::from_function(grid, [&](double x) {
      return cplx(std::sqrt(2.0) * (cosine ? std::cos(2 * pi * f * x) : std::sin(2 * pi * f * x)));
    });
  }
  if (basis == "legendre") {
    return GridFn::from_function(grid, [&](double x) {
      return cplx(std::sqrt(2.0 * k + 1.0) * std::legendre(static_cast<unsigned>(k), 2.0 * x - 1.0));
    });
  }
  throw DomainError("unknown basis '" + basis + "'");
}

NoiseModel NoiseModel::from_eigenvalues(GridPtr grid, const std::vector<double>& eigenvalues, const std::string& basis,
                                        NoiseDistribution distribution, int rank_cap) {
  if (eigenvalues.empty()) throw DomainError("noise needs at least one eigenvalue");
  if (eigenvalues.size() > grid->size()) throw DomainError("more noise eigenvalues than grid points");
  const auto P = static_cast<Eigen::Index>(grid->size());
  // Orthonormalize the basis in the quadrature inner product so the
  // eigenpairs of the covariance are exactly the ones requested.
  std::vector<GridFn> phis;
  for (std::size_t k = 0; k < eigenvalues.size(); ++k) {
    if (eigenvalues[k] < 0.0) throw DomainError("noise eigenvalues must be non-negative");
    GridFn f = basis_function(grid, basis, static_cast<int>(k));
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : phis) f = f - q * inner(f, q);
    const double n = norm(f);
    if (n < 1e-8) throw NumericalError("basis functions are linearly dependent on this grid");
    phis.push_back(f * (1.0 / n));
  }
  Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(P, P);
  for (std::size_t j = 0; j < phis.size(); ++j)
    k += eigenvalues[j] * phis[j].values().real().cast<cplx>() * phis[j].values().real().transpose().cast<cplx>();
  return NoiseModel(HSOp(std::move(grid), std::move(k), true), distribution, rank_cap);
}

// --- process model -------------------------------------------------------------

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::white: return "white";
    case ModelKind::far1: return "far1";
    case ModelKind::maq: return "maq";
    case ModelKind::bilinear1: return "bilinear1";
  }
  return "?";
}

ProcessModel::ProcessModel(ModelKind kind, NoiseModel noise, std::vector<HSOp> ops)
    : kind_(kind), noise_(std::move(noise)), ops_(std::move(ops)) {
  for (const auto& op : ops_) require_same_grid(op.grid(), noise_.grid(), "process model");
}

ProcessModel ProcessModel::white(NoiseModel noise) { return ProcessModel(ModelKind::white, std::move(noise), {}); }

ProcessModel ProcessModel::far1(NoiseModel noise, HSOp rho) {
  const double r = op_norm(rho);
  if (!(r < 1.0)) throw DomainError("far1 requires op_norm(rho) < 1, got " + std::to_string(r));
  return ProcessModel(ModelKind::far1, std::move(noise), {std::move(rho)});
}

ProcessModel ProcessModel::maq(NoiseModel noise, std::vector<HSOp> b) {
  if (b.empty()) throw DomainError("maq needs at least b_0");
  return ProcessModel(ModelKind::maq, std::move(noise), std::move(b));
}

ProcessModel ProcessModel::bilinear1(NoiseModel noise, HSOp a, HSOp c) {
  return ProcessModel(ModelKind::bilinear1, std::move(noise), {std::move(a), std::move(c)});
}

const HSOp& ProcessModel::rho() const {
  if (kind_ != ModelKind::far1) throw DomainError("rho is defined only for far1");
  return ops_[0];
}

const HSOp& ProcessModel::a() const {
  if (kind_ != ModelKind::bilinear1) throw DomainError("a is defined only for bilinear1");
  return ops_[0];
}

const HSOp& ProcessModel::c() const {
  if (kind_ != ModelKind::bilinear1) throw DomainError("c is defined only for bilinear1");
  return ops_[1];
}

HSOp ProcessModel::linear_coefficient(int j) const {
  if (j < 0) throw DomainError("coefficient index must be non-negative");
  switch (kind_) {
    case ModelKind::white: return j == 0 ? HSOp::identity(grid()) : HSOp::zero(grid());
    case ModelKind::far1: return power(ops_[0], j);
    case ModelKind::maq: return static_cast<std::size_t>(j) < ops_.size() ? ops_[static_cast<std::size_t>(j)] : HSOp::zero(grid());
    case ModelKind::bilinear1: break;
  }
  throw UnsupportedError("bilinear1 has no linear representation");
}

int ProcessModel::memory() const {
  switch (kind_) {
    case ModelKind::white: return 0;
    case ModelKind::far1: return -1;
    case ModelKind::maq: return static_cast<int>(ops_.size()) - 1;
    case ModelKind::bilinear1: return 1;
  }
  return 0;
}

int ProcessModel::default_burn_in() const {
  if (kind_ == ModelKind::far1) return static_cast<int>(std::ceil(10.0 / (1.0 - op_norm(ops_[0]))));
  return memory();
}

void ProcessModel::set_burn_in(int n) {
  if (n >= 0 && kind_ != ModelKind::far1 && n < memory())
    throw DomainError("burn-in shorter than the model memory");
  burn_in_ = n;
}

// --- parsing -------------------------------------------------------------------

HSOp parse_operator(const std::string& spec_in, const GridPtr& grid, const std::string& base_dir) {
  const std::string spec = trim(spec_in);
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  const auto P = static_cast<Eigen::Index>(grid->size());
  if (head == "identity") return HSOp::identity(grid);
  if (head == "zero") return HSOp::zero(grid);
  if (head == "scaled_identity") return HSOp::identity(grid) * parse_number(rest, "scaled_identity");
  if (head == "const") return HSOp(grid, Eigen::MatrixXcd::Constant(P, P, parse_number(rest, "const")));
  if (head == "gauss") {
    std::string args = rest;
    std::replace(args.begin(), args.end(), ':', ' ');
    const auto v = parse_numbers(args, "gauss");
    if (v.size() != 2 || !(v[1] > 0.0)) throw DomainError("gauss operator needs norm:width with width > 0");
    Eigen::MatrixXcd k(P, P);
    for (Eigen::Index i = 0; i < P; ++i)
      for (Eigen::Index j = 0; j < P; ++j) {
        const double d = grid->point(static_cast<std::size_t>(i)) - grid->point(static_cast<std::size_t>(j));
        k(i, j) = std::exp(-d * d / (2.0 * v[1] * v[1]));
      }
    HSOp op(grid, std::move(k));
    return op * (v[0] / op_norm(op));
  }
  if (head == "inline") {
    const auto v = parse_numbers(rest, "inline operator");
    if (static_cast<Eigen::Index>(v.size()) != P * P)
      throw DimensionError("inline operator needs P*P = " + std::to_string(P * P) + " values");
    Eigen::MatrixXcd k(P, P);
    for (Eigen::Index i = 0; i < P; ++i)
      for (Eigen::Index j = 0; j < P; ++j) k(i, j) = v[static_cast<std::size_t>(i * P + j)];
    return HSOp(grid, std::move(k));
  }
  if (head == "file") {
    std::filesystem::path p(rest);
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    HSOp op = op_from_array(read_array(p.string()));
    if (!same_grid(op.grid(), grid)) throw DimensionError("operator file " + p.string() + " is on a different grid");
    return HSOp(grid, op.kernel());
  }
  throw DomainError("unknown operator spec '" + spec + "'");
}

ProcessModel parse_model(const std::string& text, const std::string& base_dir) {
  std::map<std::string, std::string> kv;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw FormatError("model line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (kv.count(key)) throw FormatError("model line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    kv[key] = trim(line.substr(eq + 1));
  }
  const auto take = [&](const std::string& key) -> std::optional<std::string> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  const auto require = [&](const std::string& key) {
    auto v = take(key);
    if (!v) throw FormatError("model file is missing '" + key + "'");
    return *v;
  };

  const std::string kind = require("kind");
  const int P = static_cast<int>(parse_number(take("grid.P").value_or("1"), "grid.P"));
  if (P < 1) throw DomainError("grid.P must be positive");
  const std::string grid_type = take("grid.type").value_or("uniform");
  GridPtr grid;
  if (grid_type == "uniform")
    grid = Grid::uniform(static_cast<std::size_t>(P));
  else if (grid_type == "gauss_legendre")
    grid = Grid::gauss_legendre(static_cast<std::size_t>(P));
  else
    throw DomainError("unknown grid.type '" + grid_type + "'");

  const std::string dist_name = take("noise.distribution").value_or("gaussian");
  NoiseDistribution dist;
  if (dist_name == "gaussian")
    dist = NoiseDistribution::gaussian;
  else if (dist_name == "uniform")
    dist = NoiseDistribution::uniform;
  else
    throw DomainError("unknown noise.distribution '" + dist_name + "'");
  const int rank_cap = static_cast<int>(parse_number(take("noise.rank_cap").value_or("20"), "noise.rank_cap"));
  const std::string basis = take("noise.basis").value_or("fourier");
  const auto eig = take("noise.eigenvalues");
  const auto cov = take("noise.covariance");
  if (eig && cov) throw FormatError("give either noise.eigenvalues or noise.covariance, not both");
  NoiseModel noise = cov ? NoiseModel(parse_operator(*cov, grid, base_dir), dist, rank_cap)
                         : NoiseModel::from_eigenvalues(grid, parse_numbers(eig.value_or("1"), "noise.eigenvalues"),
                                                        basis, dist, rank_cap);
  const auto burn = take("burn_in");

  std::optional<ProcessModel> model;
  if (kind == "white") {
    model = ProcessModel::white(std::move(noise));
  } else if (kind == "far1") {
    model = ProcessModel::far1(std::move(noise), parse_operator(require("rho"), grid, base_dir));
  } else if (kind == "maq") {
    const int q = static_cast<int>(parse_number(require("q"), "q"));
    if (q < 0) throw DomainError("q must be non-negative");
    std::vector<HSOp> b;
    for (int j = 0; j <= q; ++j) {
      const auto s = take("b" + std::to_string(j));
      b.push_back(s ? parse_operator(*s, grid, base_dir) : (j == 0 ? HSOp::identity(grid) : HSOp::zero(grid)));
    }
    model = ProcessModel::maq(std::move(noise), std::move(b));
  } else if (kind == "bilinear1") {
    model = ProcessModel::bilinear1(std::move(noise), parse_operator(take("a").value_or("identity"), grid, base_dir),
                                    parse_operator(require("c"), grid, base_dir));
  } else {
    throw DomainError("unknown model kind '" + kind + "'");
  }
  if (burn) model->set_burn_in(static_cast<int>(parse_number(*burn, "burn_in")));
  if (!kv.empty()) throw FormatError("unknown model key '" + kv.begin()->first + "'");
  return *model;
}

ProcessModel load_model(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw FormatError("cannot open model file " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  const auto dir = std::filesystem::path(path).parent_path();
  return parse_model(ss.str(), dir.empty() ? "." : dir.string());
}

}  // namespace fts
