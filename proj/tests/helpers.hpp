#pragma once

#include <random>

#include "fts/hilbert.hpp"

namespace fts_test {

inline Eigen::MatrixXcd random_kernel(std::size_t P, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Eigen::MatrixXcd k(static_cast<Eigen::Index>(P), static_cast<Eigen::Index>(P));
  for (Eigen::Index i = 0; i < k.rows(); ++i)
    for (Eigen::Index j = 0; j < k.cols(); ++j) k(i, j) = {n(rng), n(rng)};
  return k;
}

inline fts::GridFn random_fn(const fts::GridPtr& g, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Eigen::VectorXcd v(static_cast<Eigen::Index>(g->size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = {n(rng), n(rng)};
  return fts::GridFn(g, v);
}

inline fts::HSOp random_op(const fts::GridPtr& g, std::mt19937_64& rng) {
  return fts::HSOp(g, random_kernel(g->size(), rng));
}

inline fts::Tensor random_tensor(const fts::GridPtr& g, int rank, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  fts::Tensor t = fts::Tensor::zero(g, rank);
  for (auto& e : t.mutable_entries()) e = {n(rng), n(rng)};
  return t;
}

}  // namespace fts_test
