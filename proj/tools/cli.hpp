#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace fts::cli {

enum ExitCode { exit_ok = 0, exit_usage = 1, exit_check_failed = 2 };

struct RunConfig {
  std::string command;
  std::string model;
  std::size_t T = 1024;
  int R = 0;  ///< 0 selects the command default
  std::uint64_t seed = 1;
  std::string window = "bartlett";
  std::string bandwidth_rule = "T^-1/3";
  std::string freqs;  ///< empty selects the command default
  std::string out;    ///< empty writes the report to stdout only
  int jobs = 0;
  std::string format = "json";
  std::string ladder;  ///< comma-separated sample sizes
  // estimate / eigen
  bool smoothed = false;
  int count = 5;
  // mc
  bool long_run = false;
  bool center_at_truth = false;
  // rates
  bool eigen = false;
  double expect_slope = 0.0, expect_var_slope = 0.0, slope_tol = 0.1;
  bool check_slopes = false;
  // cumulants
  std::string mode = "cumulant";
  std::string times = "0,0,0";
  int radius = 4;
  int k = 2;
  int J = 4;
  int p = 2;
};

nlohmann::json to_json(const RunConfig& c);
/// Overwrites the fields present in `j`; unknown keys are an error.
void apply_json(RunConfig& c, const nlohmann::json& j);

/// Parses "0,pi/2,3pi/4,1.2" style lists; "fourier" selects the Fourier frequencies of T.
std::vector<double> parse_frequencies(const std::string& text, std::size_t T);
std::vector<std::size_t> parse_ladder(const std::string& text);

/// Runs one validated configuration; writes the JSON report to `out` (and to
/// the output directory when configured). Returns the exit code.
int run(const RunConfig& config, std::ostream& out);

/// Full command line entry point.
int main_entry(int argc, char** argv);

}  // namespace fts::cli
