#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "records_io.hpp"

namespace egcs::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kConfigError = 2, kAdequacyError = 3, kDegenerateFit = 4 };

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::string family = "egcs";
  std::string n_spec;  ///< "3", "1..10" or "1,2,5"; empty selects the command default
  std::vector<double> alpha_max = {3.0};
  double alpha_min = 0.05;
  std::size_t grid_points = 60;
  std::optional<std::size_t> dim_override;
  std::string output_path;
  Format format = Format::csv;
  // generate
  std::string scheme = "pbs";
  double alpha = 1.0;
  std::size_t fock_index = 1;
  // verify-formulas
  std::vector<double> audit_alphas = {0.0, 0.5, 1.0, 2.0};
  // fit
  bool self_test = false;
  double self_test_exponent = 1.0;
};

/// Expands "a..b" (inclusive), "a,b,c" or a single integer.
[[nodiscard]] std::vector<std::size_t> parse_n_spec(const std::string& spec);

/// Parses argv-style arguments (args[0] is the program name), runs the command
/// and writes its output to `out` or to --output. Returns an ExitCode.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace egcs::cli
