#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "fts/errors.hpp"
#include "fts/io.hpp"
#include "helpers.hpp"

using namespace fts;

namespace {

std::string tmp(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "fts_test_io";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

}  // namespace

TEST_CASE("binary arrays round-trip bit for bit") {
  std::mt19937_64 rng(1);
  const auto g = Grid::gauss_legendre(5);
  const GridFn f = fts_test::random_fn(g, rng);
  const HSOp a = fts_test::random_op(g, rng);
  const Tensor t = fts_test::random_tensor(g, 3, rng);

  write_array(tmp("f.fts"), to_array(f));
  write_array(tmp("a.fts"), to_array(a));
  write_array(tmp("t.fts"), to_array(t));

  const GridFn f2 = fn_from_array(read_array(tmp("f.fts")));
  const HSOp a2 = op_from_array(read_array(tmp("a.fts")));
  const Tensor t2 = tensor_from_array(read_array(tmp("t.fts")));
  CHECK(f2.values() == f.values());
  CHECK(a2.kernel() == a.kernel());
  CHECK(t2.entries() == t.entries());
  CHECK(*a2.grid() == *g);

  std::vector<Eigen::MatrixXcd> stack{a.kernel(), a.kernel() * 2.0};
  const ArrayFile s = read_array((write_array(tmp("s.fts"), to_array(g, stack)), tmp("s.fts")));
  CHECK(s.dims == std::vector<std::uint32_t>{2, 5, 5});
}

TEST_CASE("corrupt files are rejected") {
  const auto g = Grid::uniform(3);
  write_array(tmp("ok.fts"), to_array(HSOp::identity(g)));
  {
    std::ofstream os(tmp("ok.fts"), std::ios::app | std::ios::binary);
    os.put('x');
  }
  CHECK_THROWS_AS(read_array(tmp("ok.fts")), FormatError);

  {
    std::ofstream os(tmp("bad.fts"), std::ios::binary);
    os << "NOPE and some bytes";
  }
  CHECK_THROWS_AS(read_array(tmp("bad.fts")), FormatError);

  write_array(tmp("short.fts"), to_array(HSOp::identity(g)));
  std::filesystem::resize_file(tmp("short.fts"), std::filesystem::file_size(tmp("short.fts")) - 8);
  CHECK_THROWS_AS(read_array(tmp("short.fts")), FormatError);
  CHECK_THROWS_AS(read_array(tmp("missing.fts")), FormatError);
}

TEST_CASE("rank mismatches are reported") {
  const auto g = Grid::uniform(3);
  CHECK_THROWS_AS(op_from_array(to_array(GridFn::zero(g))), DimensionError);
  CHECK_THROWS_AS(fn_from_array(to_array(HSOp::zero(g))), DimensionError);
}

TEST_CASE("csv output has the documented headers") {
  const auto g = Grid::uniform(2);
  write_csv(tmp("f.csv"), GridFn::constant(g, cplx(1.0, -2.0)));
  write_csv(tmp("a.csv"), HSOp::identity(g));
  std::ifstream f(tmp("f.csv")), a(tmp("a.csv"));
  std::string line;
  std::getline(f, line);
  CHECK(line == "index,x,re,im");
  std::getline(f, line);
  CHECK(line == "0,0,1,-2");
  std::getline(a, line);
  CHECK(line == "i,j,re,im");
  int rows = 0;
  while (std::getline(a, line)) ++rows;
  CHECK(rows == 4);
}
