#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace qes::cli {

enum class Format { Json, Csv, Table };

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kUsageError = 2,
  kNumericalFailure = 3,
};

struct RunConfig {
  std::string command;
  std::string model = "dshg";
  std::optional<int> M;
  std::optional<double> zeta2;
  std::optional<double> zeta;
  Format format = Format::Json;
  std::optional<double> tol;
  std::string out;
  std::string suite = "all";
  std::string zeta2_range;
  std::string family = "R";
  std::optional<int> n;
  std::optional<double> s;
  std::string variable = "E";
};

/// Parses argv and runs the selected command. Output goes to `out` unless
/// --out names a file; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Runs an already-parsed configuration.
int dispatch(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace qes::cli
