#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cusplab/linear_forms.hpp"
#include "cusplab/report.hpp"

namespace cusplab {

enum class Command { trace, search, transfer, verify };

enum ExitCode : int { kOk = 0, kConfigError = 2, kPrecisionError = 3, kInvariantError = 4, kIoError = 5 };

struct ExperimentConfig {
  Command command = Command::trace;
  std::optional<int> ell;
  std::optional<int> m;
  // Exactly one matrix source: inline entries (row-major), a preset, or a file.
  std::vector<std::string> entries;
  std::string preset;
  std::string matrix_file;
  unsigned precision_bits = kDefaultPrecisionBits;
  double t_max = 40;
  int samples = 400;
  std::int64_t bound = 100;
  std::optional<double> alpha;
  std::string phi;
  Format format = Format::csv;
  std::string out;
  std::uint64_t seed = 0;
  double slack_constant = 0;
  bool all_p = false;
  std::string suite;
};

/// Builds L from the configured source, parsing decimals at the configured
/// precision. Rational tokens keep the exact-rational representation.
LinearForms load_matrix(const ExperimentConfig& cfg);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Named property suites: chamber, busemann, svp-oracle,
/// transference-pipeline, correspondence.
std::vector<CheckResult> run_suite(const std::string& suite, std::uint64_t seed);
const std::vector<std::string>& suite_names();

/// Runs one experiment, writing reports to cfg.out (or `out`) and
/// diagnostics to `err`. Returns the process exit code.
int run_experiment(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace cusplab
