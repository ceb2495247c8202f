#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fts/hilbert.hpp"

namespace fts {

/// Contents of an array file.
///
/// Layout (little-endian): "FTSA", u32 version, u32 rank, u32 dims[rank],
/// u32 P, f64 weights[P], f64 points[P], then (re, im) f64 pairs in row-major
/// order.
struct ArrayFile {
  GridPtr grid;
  std::vector<std::uint32_t> dims;
  std::vector<cplx> data;

  std::size_t numel() const;
};

inline constexpr std::uint32_t kArrayFormatVersion = 1;

void write_array(const std::string& path, const ArrayFile& a);
ArrayFile read_array(const std::string& path);

ArrayFile to_array(const GridFn& f);
ArrayFile to_array(const HSOp& a);
ArrayFile to_array(const Tensor& t);
/// Stacks equally sized matrices (e.g. a T x P series, F x P x P estimates).
ArrayFile to_array(GridPtr grid, const std::vector<Eigen::MatrixXcd>& stack);
ArrayFile to_array(GridPtr grid, const Eigen::MatrixXcd& m);

GridFn fn_from_array(const ArrayFile& a);
HSOp op_from_array(const ArrayFile& a);
Tensor tensor_from_array(const ArrayFile& a);

/// CSV with header index,x,re,im.
void write_csv(const std::string& path, const GridFn& f);
/// CSV with header i,j,re,im.
void write_csv(const std::string& path, const HSOp& a);

}  // namespace fts
