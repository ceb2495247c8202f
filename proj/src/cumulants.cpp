#include "fts/cumulants.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>

#include "fts/errors.hpp"
#include "fts/parallel.hpp"
#include "fts/rng.hpp"
#include "fts/stats.hpp"

namespace fts {

namespace {

constexpr int batches = 10;

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// blocks of a restricted growth string, each listing positions in increasing order
std::vector<std::vector<int>> blocks_of(const std::vector<int>& labels) {
  const int nb = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
  std::vector<std::vector<int>> b(static_cast<std::size_t>(nb));
  for (std::size_t i = 0; i < labels.size(); ++i) b[static_cast<std::size_t>(labels[i])].push_back(static_cast<int>(i));
  return b;
}

using Entries = std::vector<double>;

// mean over draws [r0, r1) of the outer product of rows `rows`
Entries block_moment(const JointSample& s, const std::vector<int>& rows, int r0, int r1) {
  const std::size_t P = s.grid->size();
  Entries acc(ipow(P, rows.size()), 0.0);
  Entries cur, next;
  for (int r = r0; r < r1; ++r) {
    const auto& d = s.draws[static_cast<std::size_t>(r)];
    cur.assign(1, 1.0);
    for (int row : rows) {
      next.resize(cur.size() * P);
      for (std::size_t i = 0; i < cur.size(); ++i)
        for (std::size_t j = 0; j < P; ++j) next[i * P + j] = cur[i] * d(row, static_cast<Eigen::Index>(j));
      cur.swap(next);
    }
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += cur[i];
  }
  for (double& v : acc) v /= static_cast<double>(r1 - r0);
  return acc;
}

Tensor as_tensor(const GridPtr& g, int rank, const Entries& e) {
  return Tensor(g, rank, std::vector<cplx>(e.begin(), e.end()));
}

Entries as_entries(const Tensor& t) {
  Entries e;
  e.reserve(t.numel());
  for (const cplx& v : t.entries()) e.push_back(v.real());
  return e;
}

// outer product of per-block tensors (blocks given as positions 0..k-1) permuted back to position order
Entries combine(const GridPtr& g, const std::vector<std::vector<int>>& blocks, const std::vector<Entries>& parts) {
  std::vector<int> concat;
  Entries cur{1.0};
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const Entries& p = parts[b];
    Entries next(cur.size() * p.size());
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (std::size_t j = 0; j < p.size(); ++j) next[i * p.size() + j] = cur[i] * p[j];
    cur.swap(next);
    concat.insert(concat.end(), blocks[b].begin(), blocks[b].end());
  }
  const int k = static_cast<int>(concat.size());
  std::vector<int> perm(concat.size());
  for (int pos = 0; pos < k; ++pos) perm[static_cast<std::size_t>(concat[static_cast<std::size_t>(pos)])] = pos;
  bool identity = true;
  for (int i = 0; i < k; ++i) identity = identity && perm[static_cast<std::size_t>(i)] == i;
  if (identity || k <= 1) return cur;
  return as_entries(permute(as_tensor(g, k, cur), perm));
}

// cumulant of the rows `rows` (in that order) over draws [r0, r1)
Entries cumulant_rows(const JointSample& s, const std::vector<int>& rows, bool zero_mean, int r0, int r1) {
  const int k = static_cast<int>(rows.size());
  const std::size_t P = s.grid->size();
  Entries out(ipow(P, rows.size()), 0.0);
  std::map<std::vector<int>, Entries> cache;
  for (const auto& labels : set_partitions(k)) {
    const auto blocks = blocks_of(labels);
    if (zero_mean && std::any_of(blocks.begin(), blocks.end(), [](const auto& b) { return b.size() == 1; }))
      continue;
    std::vector<Entries> parts;
    for (const auto& b : blocks) {
      auto it = cache.find(b);
      if (it == cache.end()) {
        std::vector<int> sub;
        for (int pos : b) sub.push_back(rows[static_cast<std::size_t>(pos)]);
        it = cache.emplace(b, block_moment(s, sub, r0, r1)).first;
      }
      parts.push_back(it->second);
    }
    const int nb = static_cast<int>(blocks.size());
    const double coef = factorial(nb - 1) * ((nb - 1) % 2 ? -1.0 : 1.0);
    const Entries term = combine(s.grid, blocks, parts);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += coef * term[i];
  }
  return out;
}

Entries reconstruct_rows(const JointSample& s, int r0, int r1) {
  const int n = s.order();
  const std::size_t P = s.grid->size();
  Entries out(ipow(P, static_cast<std::size_t>(n)), 0.0);
  std::map<std::vector<int>, Entries> cache;
  for (const auto& labels : set_partitions(n)) {
    const auto blocks = blocks_of(labels);
    std::vector<Entries> parts;
    for (const auto& b : blocks) {
      auto it = cache.find(b);
      if (it == cache.end()) it = cache.emplace(b, cumulant_rows(s, b, false, r0, r1)).first;
      parts.push_back(it->second);
    }
    const Entries term = combine(s.grid, blocks, parts);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += term[i];
  }
  return out;
}

// full-sample value and entrywise se from equal batches
std::pair<Entries, Entries> with_batch_se(const JointSample& s, const std::function<Entries(int, int)>& f) {
  const int R = s.R();
  if (R < 2 * batches) throw DomainError("batch standard errors need R >= 20");
  std::vector<Entries> parts(batches + 1);
  parallel_for(parts.size(), [&](std::size_t b) {
    if (b == batches) {
      parts[b] = f(0, R);
      return;
    }
    const int lo = static_cast<int>(b) * R / batches;
    const int hi = (static_cast<int>(b) + 1) * R / batches;
    parts[b] = f(lo, hi);
  });
  Entries se(parts[0].size(), 0.0);
  for (std::size_t i = 0; i < se.size(); ++i) {
    double m = 0.0;
    for (int b = 0; b < batches; ++b) m += parts[static_cast<std::size_t>(b)][i];
    m /= batches;
    double ss = 0.0;
    for (int b = 0; b < batches; ++b) ss += std::pow(parts[static_cast<std::size_t>(b)][i] - m, 2);
    se[i] = std::sqrt(ss / (batches - 1) / batches);
  }
  return {parts[batches], se};
}

std::vector<int> all_rows(int n) {
  std::vector<int> r(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) r[static_cast<std::size_t>(i)] = i;
  return r;
}

}  // namespace

std::vector<std::vector<int>> set_partitions(int n) {
  if (n < 0) throw DomainError("set_partitions: negative size");
  std::vector<std::vector<int>> out;
  if (n == 0) return {{}};
  std::vector<int> a(static_cast<std::size_t>(n), 0);
  std::function<void(int, int)> rec = [&](int i, int max_label) {
    if (i == n) {
      out.push_back(a);
      return;
    }
    for (int l = 0; l <= max_label + 1; ++l) {
      a[static_cast<std::size_t>(i)] = l;
      rec(i + 1, std::max(max_label, l));
    }
  };
  a[0] = 0;
  rec(1, 0);
  return out;
}

JointSample sample_joint(const ProcessModel& model, const std::vector<int>& times, int R, std::uint64_t seed) {
  const int n = static_cast<int>(times.size());
  if (n < 1 || n > 4) throw DomainError("cumulant order must be in 1..4");
  if (n == 4 && model.grid()->size() > 12) throw DomainError("order-4 tensors are limited to P <= 12");
  if (R < 2) throw DomainError("need R >= 2 draws");
  const int lo = *std::min_element(times.begin(), times.end());
  const int hi = *std::max_element(times.begin(), times.end());
  const auto span = static_cast<std::size_t>(hi - lo + 1);
  JointSample s;
  s.grid = model.grid();
  s.times = times;
  s.draws.resize(static_cast<std::size_t>(R));
  parallel_for(s.draws.size(), [&](std::size_t r) {
    const SamplePath path = simulate(model, span, stream_seed(seed, r));
    Eigen::MatrixXd d(n, path.series.cols());
    for (int i = 0; i < n; ++i) d.row(i) = path.series.row(times[static_cast<std::size_t>(i)] - lo).real();
    s.draws[r] = std::move(d);
  });
  return s;
}

MomentTensor moment_tensor(const JointSample& s) {
  const int n = s.order();
  const std::size_t P = s.grid->size();
  const int R = s.R();
  const std::size_t numel = ipow(P, static_cast<std::size_t>(n));
  // per-entry first and second moments; entries split across workers
  Entries sum(numel, 0.0), sum2(numel, 0.0);
  const std::size_t chunk = std::max<std::size_t>(1, numel / 64);
  const std::size_t nchunks = (numel + chunk - 1) / chunk;
  parallel_for(nchunks, [&](std::size_t c) {
    const std::size_t lo = c * chunk, hi = std::min(numel, lo + chunk);
    for (int r = 0; r < R; ++r) {
      const auto& d = s.draws[static_cast<std::size_t>(r)];
      for (std::size_t off = lo; off < hi; ++off) {
        std::size_t rem = off;
        double v = 1.0;
        for (int ax = n - 1; ax >= 0; --ax) {
          v *= d(ax, static_cast<Eigen::Index>(rem % P));
          rem /= P;
        }
        sum[off] += v;
        sum2[off] += v * v;
      }
    }
  });
  Entries m(numel), se(numel);
  for (std::size_t i = 0; i < numel; ++i) {
    m[i] = sum[i] / R;
    const double var = std::max(0.0, (sum2[i] - R * m[i] * m[i]) / (R - 1));
    se[i] = std::sqrt(var / R);
  }
  return {s.times, R, as_tensor(s.grid, n, m), as_tensor(s.grid, n, se)};
}

MomentTensor moment_tensor(const ProcessModel& model, const std::vector<int>& times, int R, std::uint64_t seed) {
  return moment_tensor(sample_joint(model, times, R, seed));
}

CumTensor cumulant(const JointSample& s, bool zero_mean) {
  const auto rows = all_rows(s.order());
  auto [value, se] = with_batch_se(s, [&](int r0, int r1) { return cumulant_rows(s, rows, zero_mean, r0, r1); });
  CumTensor c{s.times, s.R(), zero_mean, as_tensor(s.grid, s.order(), value), as_tensor(s.grid, s.order(), se), 0.0};
  c.hs_se = hs_norm(c.se);
  return c;
}

CumTensor cumulant(const ProcessModel& model, const std::vector<int>& times, int R, std::uint64_t seed,
                   bool zero_mean) {
  return cumulant(sample_joint(model, times, R, seed), zero_mean);
}

Reconstruction moment_from_cumulants(const JointSample& s) {
  auto [value, se] = with_batch_se(s, [&](int r0, int r1) { return reconstruct_rows(s, r0, r1); });
  return {as_tensor(s.grid, s.order(), value), as_tensor(s.grid, s.order(), se)};
}

double TensorComparison::threshold(double alpha) const {
  return normal_two_sided(alpha / static_cast<double>(std::max<std::size_t>(entries, 1)));
}

TensorComparison compare_within_error(const Tensor& a, const Tensor& se_a, const Tensor& b, const Tensor& se_b) {
  if (a.numel() != b.numel() || a.numel() != se_a.numel() || a.numel() != se_b.numel())
    throw DimensionError("compare_within_error: tensor sizes differ");
  TensorComparison c;
  c.entries = a.numel();
  for (std::size_t i = 0; i < a.numel(); ++i) {
    const double s = std::hypot(std::abs(se_a.entries()[i]), std::abs(se_b.entries()[i]));
    const cplx d = a.entries()[i] - b.entries()[i];
    for (double part : {d.real(), d.imag()}) {
      if (s > 0.0) {
        c.max_z = std::max(c.max_z, std::abs(part) / s);
      } else if (std::abs(part) > 1e-12) {
        c.max_z = std::numeric_limits<double>::infinity();
      }
    }
  }
  return c;
}

SummabilityReport cumulant_summability(const ProcessModel& model, int n, int max_radius, int R, std::uint64_t seed) {
  if (n != 2 && n != 3) throw DomainError("summability is computed for n = 2 and n = 3 only");
  if (max_radius < 0) throw DomainError("radius must be non-negative");
  std::vector<std::vector<int>> tuples;
  for (int t1 = -max_radius; t1 <= max_radius; ++t1) {
    if (n == 2) {
      tuples.push_back({t1, 0});
      continue;
    }
    for (int t2 = -max_radius; t2 <= max_radius; ++t2) tuples.push_back({t1, t2, 0});
  }
  std::vector<double> norms(tuples.size()), ses(tuples.size());
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    const CumTensor c = cumulant(model, tuples[i], R, stream_seed(seed, i));
    norms[i] = hs_norm(c.value);
    ses[i] = c.hs_se;
  }
  SummabilityReport rep;
  rep.n = n;
  double running = 0.0, exact = 0.0;
  for (int L = 0; L <= max_radius; ++L) {
    SummabilityLevel lv;
    lv.L = L;
    for (std::size_t i = 0; i < tuples.size(); ++i) {
      int radius = 0;
      for (int t : tuples[i]) radius = std::max(radius, std::abs(t));
      if (radius != L) continue;
      lv.increment += norms[i];
      lv.noise += ses[i];
    }
    running += lv.increment;
    lv.partial_sum = running;
    if (n == 2 && model.linear()) {
      exact += hs_norm(true_cov(model, L));
      if (L > 0) exact += hs_norm(true_cov(model, -L));
      lv.exact = exact;
    }
    rep.levels.push_back(lv);
  }
  return rep;
}

SufconCheck sufcon_bound_check(const ProcessModel& model, int k, int J, int p, int R, std::uint64_t seed) {
  if (k != 1 && k != 2) throw DomainError("sufcon check supports k = 1 and k = 2");
  if (J < 0) throw DomainError("J must be non-negative");
  SufconCheck out;
  out.k = k;
  out.J = J;
  out.p = p;
  double lhs_var = 0.0, rhs_var = 0.0;
  std::uint64_t stream = 0;
  for (int j = 0; j <= J; ++j) {
    const NuEstimate nu = nu_coefficient(model, j, p, R, stream_seed(seed, stream++));
    const double mult = (k == 1) ? 1.0 : 2.0 * j;
    out.rhs += mult * nu.value;
    rhs_var += mult * mult * nu.se * nu.se;
  }
  if (k == 1) {
    for (int j = 0; j <= J; ++j) {
      const NuEstimate e = nu_higher(model, {j}, p, R, stream_seed(seed, stream++));
      out.lhs += e.value;
      lhs_var += e.se * e.se;
    }
  } else {
    for (int j2 = 0; j2 <= J; ++j2)
      for (int j1 = 0; j1 < j2; ++j1) {
        const NuEstimate e = nu_higher(model, {j1, j2}, p, R, stream_seed(seed, stream++));
        out.lhs += e.value;
        lhs_var += e.se * e.se;
      }
  }
  out.lhs_se = std::sqrt(lhs_var);
  out.rhs_se = std::sqrt(rhs_var);
  const double tol = 3.0 * std::sqrt(lhs_var + rhs_var);
  out.holds = k == 1 ? std::abs(out.lhs - out.rhs) <= tol : out.lhs <= out.rhs + tol;
  return out;
}

MinboundCheck minbound_check(const ProcessModel& model, const std::vector<int>& lags, int p, int R,
                             std::uint64_t seed) {
  if (lags.empty() || lags.size() > 3) throw DomainError("minbound check needs 1 to 3 lags");
  MinboundCheck out;
  out.lags = lags;
  out.value = nu_higher(model, lags, p, R, stream_seed(seed, 0));
  double min_value = std::numeric_limits<double>::infinity(), min_se = 0.0;
  for (std::size_t d = 0; d < lags.size(); ++d) {
    std::vector<int> sub;
    for (std::size_t i = 0; i < lags.size(); ++i)
      if (i != d) sub.push_back(lags[i]);
    out.drops.push_back(nu_higher(model, sub, p, R, stream_seed(seed, d + 1)));
    if (out.drops.back().value < min_value) {
      min_value = out.drops.back().value;
      min_se = out.drops.back().se;
    }
  }
  out.bound = 2.0 * min_value;
  // coefficients that vanish exactly still carry summation roundoff
  const double roundoff = 1e-12 * (1.0 + std::abs(out.value.value));
  out.holds =
      out.value.value <= out.bound + 3.0 * std::sqrt(out.value.se * out.value.se + 4.0 * min_se * min_se) + roundoff;
  return out;
}

}  // namespace fts
