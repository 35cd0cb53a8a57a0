#pragma once

// Subcommands of the pdmorse tool. Each writes its files into `out_dir`,
// prints a human-readable report to `log` and returns the process exit code.
// Library failures propagate as exceptions; run_guarded maps them to codes.

#include <exception>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "pdm/app/config.hpp"

namespace pdm::app {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 1,
  kNumericalFailure = 2,
  kCheckFailed = 3,
};

/// (m, n) does not name an emitted level; a usage error (exit code 1).
class UnknownLevel : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exception class name for diagnostics ("NoBracket", "ConfigError", ...).
std::string error_kind(const std::exception& e);
int exit_code_for(const std::exception& e);

/// Runs `body`, reporting any exception on `err` and translating it.
int run_guarded(const std::function<int()>& body, std::ostream& err);

int cmd_spectrum(const RunConfig& config, const std::filesystem::path& out_dir,
                 std::ostream& log);

struct FieldRequest {
  std::string which;  // potential | mass | ueff | chi | psi
  std::optional<int> m;
  std::optional<int> n;
  std::optional<double> energy;
};

int cmd_fields(const RunConfig& config, const FieldRequest& request,
               const std::filesystem::path& out_dir, std::ostream& log);

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;
};

/// The full invariant suite on the configured model.
std::vector<CheckResult> run_verification(const RunConfig& config);

int cmd_verify(const RunConfig& config, const std::filesystem::path& out_dir,
               std::ostream& log);

/// Only for the published parameter set; always exits 0 once it has run.
int cmd_compare_table(const RunConfig& config,
                      const std::filesystem::path& out_dir, std::ostream& log);

/// Finite-difference self-consistent energies of the lowest first-principles
/// levels at `nodes` and 2*nodes-1 points per axis.
int cmd_oracle(const RunConfig& config, const std::filesystem::path& out_dir,
               std::ostream& log, int nodes = 192, int levels = 3);

int cmd_config(const RunConfig& config, const std::filesystem::path& out_dir,
               std::ostream& log);

}  // namespace pdm::app
