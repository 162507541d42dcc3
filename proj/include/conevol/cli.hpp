#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace conevol::cli {

inline constexpr const char* kCommands[] = {
    "cone-volume",  "pscc",          "scc-check",           "typecones",    "emit-system",
    "solve-inverse", "membership-trapezoid", "figure1-data", "paper-suite"};

struct RunConfig {
  std::string command;
  std::string input;   ///< path; empty for commands that need none
  std::string output;  ///< path; empty writes to the output stream
  std::uint64_t seed = 0;
  double tol_incidence = 1e-9;
  double tol_residual = 1e-10;
  int starts = 20;
  std::string format = "json";  ///< json | csv
  std::string gamma;            ///< JSON array overriding the input's gamma
  bool smtlib = false;
  bool allow_zero = false;
  int trials = 200;
  int samples = 5000;
};

/// Exit codes: 0 ok, 1 internal failure, 2 validation error, 3 no convergence.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (CLI11) and dispatches to run().
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

struct SuiteRow {
  std::string module;
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Reproduces the worked examples of every module.
std::vector<SuiteRow> example_suite();

}  // namespace conevol::cli
