#include "fts/kernels.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "fts/errors.hpp"
#include "fts/parallel.hpp"

namespace fts {

namespace {

using cplx = std::complex<double>;

void check_lag(const Eigen::MatrixXcd& series, int max_lag) {
  if (series.rows() < 1) throw DomainError("series must contain at least one observation");
  if (max_lag < 0 || max_lag >= series.rows()) throw DomainError("lag out of range for series length");
}

}  // namespace

std::vector<Eigen::MatrixXcd> lag_covariances(const Eigen::MatrixXcd& series, int max_lag) {
  check_lag(series, max_lag);
  const Eigen::Index T = series.rows();
  const Eigen::MatrixXcd conj_series = series.conjugate();
  std::vector<Eigen::MatrixXcd> out(static_cast<std::size_t>(max_lag) + 1);
  parallel_for(out.size(), [&](std::size_t hh) {
    const auto h = static_cast<Eigen::Index>(hh);
    const Eigen::Index n = T - h;
    out[hh].noalias() = series.bottomRows(n).transpose() * conj_series.topRows(n);
    out[hh] /= static_cast<double>(T);
  });
  return out;
}

std::vector<Eigen::MatrixXcd> lag_covariances_serial(const Eigen::MatrixXcd& series, int max_lag) {
  check_lag(series, max_lag);
  const Eigen::Index T = series.rows(), P = series.cols();
  std::vector<Eigen::MatrixXcd> out;
  for (Eigen::Index h = 0; h <= max_lag; ++h) {
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(P, P);
    for (Eigen::Index t = 0; t + h < T; ++t)
      for (Eigen::Index i = 0; i < P; ++i)
        for (Eigen::Index j = 0; j < P; ++j) c(i, j) += series(t + h, i) * std::conj(series(t, j));
    out.push_back(c / static_cast<double>(T));
  }
  return out;
}

Eigen::MatrixXcd fdft_rows(const Eigen::MatrixXcd& series, const std::vector<double>& freqs) {
  const Eigen::Index T = series.rows(), P = series.cols();
  const auto N = static_cast<Eigen::Index>(freqs.size());
  const double scale = 1.0 / std::sqrt(2.0 * std::numbers::pi * static_cast<double>(T));
  Eigen::MatrixXcd out(N, P);
  constexpr Eigen::Index chunk = 128;
  const auto nchunks = static_cast<std::size_t>((N + chunk - 1) / chunk);
  parallel_for(nchunks, [&](std::size_t c) {
    const Eigen::Index n0 = static_cast<Eigen::Index>(c) * chunk;
    const Eigen::Index rows = std::min(chunk, N - n0);
    Eigen::MatrixXcd E(rows, T);
    for (Eigen::Index n = 0; n < rows; ++n) {
      // exp(-i a t) by direct evaluation: recurrences drift for long series
      const double a = freqs[static_cast<std::size_t>(n0 + n)];
      for (Eigen::Index t = 0; t < T; ++t) E(n, t) = std::polar(scale, -a * static_cast<double>(t + 1));
    }
    out.middleRows(n0, rows).noalias() = E * series;
  });
  return out;
}

Eigen::MatrixXcd fdft_rows_serial(const Eigen::MatrixXcd& series, const std::vector<double>& freqs) {
  const Eigen::Index T = series.rows(), P = series.cols();
  const double scale = 1.0 / std::sqrt(2.0 * std::numbers::pi * static_cast<double>(T));
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(freqs.size()), P);
  for (std::size_t n = 0; n < freqs.size(); ++n)
    for (Eigen::Index t = 0; t < T; ++t) {
      const cplx e = std::polar(scale, -freqs[n] * static_cast<double>(t + 1));
      for (Eigen::Index i = 0; i < P; ++i) out(static_cast<Eigen::Index>(n), i) += e * series(t, i);
    }
  return out;
}

}  // namespace fts
