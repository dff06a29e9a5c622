#pragma once

#include "cslrot/config.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cslrot {

struct CommandOptions {
  std::filesystem::path out_dir = ".";
  bool check = false;
  /// Overrides quadrature.rel_tol.
  std::optional<double> tol;
};

/// Largest deviation of a command's output from its oracle.
struct CheckReport {
  std::string oracle;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool passed() const { return max_deviation <= tolerance; }
};

struct CommandResult {
  std::vector<std::filesystem::path> files;
  std::optional<CheckReport> check;
  std::vector<std::string> notes;  ///< diagnostics for stderr
};

inline constexpr std::string_view kCommands[] = {"formfactor", "locrate", "diffusion", "planar", "exclude"};

/// Runs one subcommand. All results are computed before any file is written.
/// Throws ConfigError for missing sections, ConvergenceError when a
/// quadrature or propagation tolerance cannot be met.
CommandResult run_command(std::string_view command, const RunConfig& cfg, const CommandOptions& opt);

/// Tolerance used by --check: max(1e-6, 100 rel_tol).
double check_tolerance(double rel_tol);

/// CLI exit codes.
enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitConfig = 2, kExitConvergence = 3 };

}  // namespace cslrot
