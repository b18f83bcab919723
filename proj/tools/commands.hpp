#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fdsl::cli {

/// Runs one command line (args exclude the program name). Normal output goes
/// to `out`, diagnostics to `err`. Returns the process exit code:
/// 0 success, 1 computation failure, 2 usage or config error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fdsl::cli
