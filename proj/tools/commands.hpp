#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "config.hpp"
#include "output.hpp"

namespace dnls_cli {

/// Nonzero status from the library.
class ApiError : public std::runtime_error {
  public:
    ApiError(int status, const std::string& what) : std::runtime_error(what), status_(status) {}
    int status() const noexcept { return status_; }

  private:
    int status_;
};

enum ExitCode { exit_ok = 0, exit_invalid_config = 1, exit_numerical = 2, exit_check_failed = 3 };

const std::vector<std::string>& subcommands();

/// Runs one subcommand, writing its tables into `out`. Throws ConfigError
/// for invalid settings and ApiError for library failures; the caller maps
/// both onto exit codes.
void run_subcommand(const std::string& name, const Config& cfg, RunOutput& out);

/// Exit code for a library status.
int exit_code_for(int status);

}  // namespace dnls_cli
