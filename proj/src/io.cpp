#include "fts/io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <numeric>

#include "fts/errors.hpp"

namespace fts {

static_assert(std::endian::native == std::endian::little, "array format I/O assumes a little-endian host");

namespace {

template <class T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& is, const std::string& path) {
  T v;
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw FormatError(path + ": truncated array file");
  return v;
}

}  // namespace

std::size_t ArrayFile::numel() const {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                         [](std::size_t a, std::uint32_t d) { return a * d; });
}

void write_array(const std::string& path, const ArrayFile& a) {
  if (!a.grid) throw DomainError("write_array: missing grid");
  if (a.numel() != a.data.size()) throw DimensionError("write_array: dims do not match data length");
  std::ofstream os(path, std::ios::binary);
  if (!os) throw FormatError("cannot open " + path + " for writing");
  os.write("FTSA", 4);
  put<std::uint32_t>(os, kArrayFormatVersion);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(a.dims.size()));
  for (auto d : a.dims) put<std::uint32_t>(os, d);
  const auto& g = *a.grid;
  put<std::uint32_t>(os, static_cast<std::uint32_t>(g.size()));
  for (double w : g.weights()) put<double>(os, w);
  for (double x : g.points()) put<double>(os, x);
  for (const cplx& v : a.data) {
    put<double>(os, v.real());
    put<double>(os, v.imag());
  }
  if (!os) throw FormatError("write failed for " + path);
}

ArrayFile read_array(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError("cannot open " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "FTSA", 4) != 0) throw FormatError(path + ": bad magic");
  const auto version = get<std::uint32_t>(is, path);
  if (version != kArrayFormatVersion) throw FormatError(path + ": unsupported version " + std::to_string(version));
  const auto rank = get<std::uint32_t>(is, path);
  if (rank == 0 || rank > 8) throw FormatError(path + ": bad rank");
  ArrayFile a;
  a.dims.resize(rank);
  for (auto& d : a.dims) d = get<std::uint32_t>(is, path);
  const auto P = get<std::uint32_t>(is, path);
  if (P == 0) throw FormatError(path + ": empty grid");
  std::vector<double> w(P), x(P);
  for (auto& v : w) v = get<double>(is, path);
  for (auto& v : x) v = get<double>(is, path);
  try {
    a.grid = std::make_shared<const Grid>(std::move(x), std::move(w));
  } catch (const std::invalid_argument& e) {
    throw FormatError(path + ": invalid grid: " + e.what());
  }
  a.data.resize(a.numel());
  for (auto& v : a.data) {
    const double re = get<double>(is, path);
    const double im = get<double>(is, path);
    v = cplx(re, im);
  }
  is.peek();
  if (!is.eof()) throw FormatError(path + ": trailing bytes after payload");
  return a;
}

ArrayFile to_array(const GridFn& f) {
  ArrayFile a{f.grid(), {static_cast<std::uint32_t>(f.size())}, {}};
  a.data.assign(f.values().data(), f.values().data() + f.values().size());
  return a;
}

ArrayFile to_array(const HSOp& op) { return to_array(op.grid(), op.kernel()); }

ArrayFile to_array(const Tensor& t) {
  ArrayFile a{t.grid(), std::vector<std::uint32_t>(static_cast<std::size_t>(t.rank()),
                                                   static_cast<std::uint32_t>(t.dim())),
              t.entries()};
  return a;
}

ArrayFile to_array(GridPtr grid, const Eigen::MatrixXcd& m) {
  ArrayFile a{std::move(grid), {static_cast<std::uint32_t>(m.rows()), static_cast<std::uint32_t>(m.cols())}, {}};
  a.data.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) a.data.push_back(m(i, j));
  return a;
}

ArrayFile to_array(GridPtr grid, const std::vector<Eigen::MatrixXcd>& stack) {
  if (stack.empty()) throw DomainError("to_array: empty stack");
  const auto r = stack.front().rows(), c = stack.front().cols();
  ArrayFile a{std::move(grid),
              {static_cast<std::uint32_t>(stack.size()), static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(c)},
              {}};
  a.data.reserve(stack.size() * static_cast<std::size_t>(r * c));
  for (const auto& m : stack) {
    if (m.rows() != r || m.cols() != c) throw DimensionError("to_array: ragged stack");
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = 0; j < c; ++j) a.data.push_back(m(i, j));
  }
  return a;
}

GridFn fn_from_array(const ArrayFile& a) {
  if (a.dims.size() != 1 || a.dims[0] != a.grid->size()) throw DimensionError("array is not a grid function");
  Eigen::VectorXcd v(static_cast<Eigen::Index>(a.data.size()));
  for (std::size_t i = 0; i < a.data.size(); ++i) v(static_cast<Eigen::Index>(i)) = a.data[i];
  return GridFn(a.grid, std::move(v));
}

HSOp op_from_array(const ArrayFile& a) {
  const auto P = a.grid->size();
  if (a.dims.size() != 2 || a.dims[0] != P || a.dims[1] != P) throw DimensionError("array is not a P x P operator");
  Eigen::MatrixXcd k(static_cast<Eigen::Index>(P), static_cast<Eigen::Index>(P));
  for (std::size_t i = 0; i < P; ++i)
    for (std::size_t j = 0; j < P; ++j) k(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a.data[i * P + j];
  return HSOp(a.grid, std::move(k));
}

Tensor tensor_from_array(const ArrayFile& a) {
  for (auto d : a.dims)
    if (d != a.grid->size()) throw DimensionError("array axes do not all match the grid");
  return Tensor(a.grid, static_cast<int>(a.dims.size()), a.data);
}

void write_csv(const std::string& path, const GridFn& f) {
  std::ofstream os(path);
  if (!os) throw FormatError("cannot open " + path + " for writing");
  os << std::setprecision(17) << "index,x,re,im\n";
  for (std::size_t i = 0; i < f.size(); ++i)
    os << i << ',' << f.grid()->point(i) << ',' << f[i].real() << ',' << f[i].imag() << '\n';
}

void write_csv(const std::string& path, const HSOp& a) {
  std::ofstream os(path);
  if (!os) throw FormatError("cannot open " + path + " for writing");
  os << std::setprecision(17) << "i,j,re,im\n";
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) os << i << ',' << j << ',' << a(i, j).real() << ',' << a(i, j).imag() << '\n';
}

}  // namespace fts
