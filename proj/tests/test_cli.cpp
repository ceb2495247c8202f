#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "../tools/cli.hpp"
#include "fts/errors.hpp"
#include "fts/io.hpp"

using namespace fts;
using nlohmann::json;

namespace {

constexpr double pi = std::numbers::pi;

std::string model(const std::string& name) { return std::string(FTS_MODEL_DIR) + "/" + name + ".model"; }

std::filesystem::path scratch(const std::string& name) {
  const auto d = std::filesystem::temp_directory_path() / "fts_test_cli" / name;
  std::filesystem::remove_all(d);
  std::filesystem::create_directories(d.parent_path());
  return d;
}

json run_json(const cli::RunConfig& c, int* code = nullptr) {
  std::ostringstream os;
  const int rc = cli::run(c, os);
  if (code) *code = rc;
  return json::parse(os.str());
}

int call(std::vector<std::string> args) {
  args.insert(args.begin(), "fts");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream sink;
  auto* old = std::cout.rdbuf(sink.rdbuf());
  const int rc = cli::main_entry(static_cast<int>(argv.size()), argv.data());
  std::cout.rdbuf(old);
  return rc;
}

}  // namespace

TEST_CASE("frequency and ladder parsing") {
  const auto f = cli::parse_frequencies("0, pi/2,3pi/4 ,1.25,pi,-pi/3", 16);
  REQUIRE(f.size() == 6);
  CHECK(f[0] == 0.0);
  CHECK(f[1] == doctest::Approx(pi / 2));
  CHECK(f[2] == doctest::Approx(3 * pi / 4));
  CHECK(f[3] == 1.25);
  CHECK(f[4] == doctest::Approx(pi));
  CHECK(f[5] == doctest::Approx(-pi / 3));
  CHECK(cli::parse_frequencies("fourier", 16).size() == 9);
  CHECK_THROWS_AS(cli::parse_frequencies("tau/2", 16), DomainError);
  CHECK_THROWS_AS(cli::parse_frequencies("", 16), DomainError);
  CHECK(cli::parse_ladder("256, 512,1024") == std::vector<std::size_t>{256, 512, 1024});
  CHECK_THROWS_AS(cli::parse_ladder("256,x"), DomainError);
  CHECK_THROWS_AS(cli::parse_ladder("0"), DomainError);
}

TEST_CASE("config JSON round trip and validation") {
  cli::RunConfig c;
  c.command = "rates";
  c.model = "m.model";
  c.T = 77;
  c.freqs = "0,pi";
  c.eigen = true;
  c.slope_tol = 0.25;
  cli::RunConfig d;
  cli::apply_json(d, cli::to_json(c));
  CHECK(cli::to_json(d) == cli::to_json(c));
  CHECK_THROWS_AS(cli::apply_json(d, json{{"bandwdith", 0.1}}), FormatError);
  CHECK_THROWS_AS(cli::apply_json(d, json{{"T", "many"}}), FormatError);
  CHECK_THROWS_AS(cli::apply_json(d, json::array()), FormatError);
}

TEST_CASE("reports are deterministic apart from timing") {
  cli::RunConfig c;
  c.command = "estimate";
  c.model = model("far1_p8");
  c.T = 512;
  c.freqs = "0,pi/2";
  c.seed = 9;
  json a = run_json(c), b = run_json(c);
  CHECK(a["version"].is_string());
  CHECK(a["checks"]["passed"] == true);
  CHECK(a["results"]["frequencies"].size() == 2);
  a.erase("timing");
  b.erase("timing");
  CHECK(a.dump() == b.dump());
  c.seed = 10;
  json e = run_json(c);
  e.erase("timing");
  CHECK(e.dump() != a.dump());
}

TEST_CASE("artifacts are written to the output directory") {
  const auto dir = scratch("est");
  cli::RunConfig c;
  c.command = "estimate";
  c.model = model("far1_p8");
  c.T = 256;
  c.freqs = "0.5";
  c.out = dir.string();
  c.format = "bin";
  run_json(c);
  CHECK(std::filesystem::exists(dir / "report.json"));
  const HSOp f = op_from_array(read_array((dir / "estimate_0.fts").string()));
  CHECK(f.size() == 8);

  c.command = "simulate";
  c.format = "csv";
  run_json(c);
  std::ifstream is(dir / "series.csv");
  std::string header;
  std::getline(is, header);
  CHECK(header == "row,index,x,re,im");
}

TEST_CASE("exit codes") {
  cli::RunConfig c;
  c.command = "check-weights";
  int code = -1;
  const json r = run_json(c, &code);
  // ratio (i) stays below one half for lag windows, so the pinned band fails
  CHECK(code == cli::exit_check_failed);
  CHECK(r["results"]["ii_decreasing"] == true);
  CHECK(r["results"]["iv_decreasing"] == true);
  CHECK(r["checks"]["failures"].size() == 1);

  c.command = "cumulants";
  c.model = model("bilinear1_p8");
  c.mode = "sufcon";
  c.R = 2000;
  run_json(c, &code);
  CHECK(code == cli::exit_ok);

  CHECK(call({"frobnicate"}) == cli::exit_usage);
  CHECK(call({"estimate"}) == cli::exit_usage);
  CHECK(call({"estimate", "--model", model("nope")}) == cli::exit_usage);
  CHECK(call({"estimate", "--model", model("white_scalar"), "--format", "xml"}) == cli::exit_usage);
  CHECK(call({"simulate", "--model", model("white_scalar"), "--T", "16"}) == cli::exit_ok);
}

TEST_CASE("config file values win over flags") {
  const auto dir = scratch("cfg");
  std::filesystem::create_directories(dir);
  const auto cfg = dir / "config.json";
  std::ofstream(cfg) << json{{"T", 32}, {"seed", 4}}.dump();
  CHECK(call({"simulate", "--model", model("white_p16"), "--T", "999", "--config", cfg.string(), "--out",
              (dir / "out").string()}) == cli::exit_ok);
  std::ifstream is(dir / "out" / "report.json");
  const json r = json::parse(is);
  CHECK(r["results"]["T"] == 32);
  CHECK(r["seed"] == 4);
  std::ofstream(cfg) << "{ not json";
  CHECK(call({"simulate", "--model", model("white_p16"), "--config", cfg.string()}) == cli::exit_usage);
}
