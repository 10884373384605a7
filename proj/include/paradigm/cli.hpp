#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace paradigm::cli {

enum ExitCode : int {
  kOk = 0,
  kPropertyFalse = 1,
  kInvalidInput = 2,
  kIoError = 3,
};

/// Runs one command line (without the program name). Regular output goes to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace paradigm::cli
