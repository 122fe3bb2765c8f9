#pragma once

#include <iosfwd>
#include <optional>
#include <string>

namespace taco::cli {

enum ExitCode : int {
  kOk = 0,
  kGuidanceFail = 1,  // guide found a Fail
  kNotConverged = 2,  // layout-producing command did not converge
  kError = 3,         // I/O, ingestion or argument error
};

/// Runs one command. `config_json` is the text of the TACO_CONFIG file, if
/// any; its values sit under the command-line flags.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
        const std::optional<std::string>& config_json);

/// Reads TACO_CONFIG from the environment and calls run().
int main_entry(int argc, const char* const* argv);

}  // namespace taco::cli
