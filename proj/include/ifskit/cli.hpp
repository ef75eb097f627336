#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ifskit {

// Runs one CLI invocation (args exclude the program name). Writes reports to
// `out`, one-line `error:`-prefixed diagnostics to `err`. Exit codes:
// 0 success, 1 input error, 2 domain error, 3 resource error.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace ifskit
