#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace norlund::cli {

enum class Status { Ok = 0, CheckFailed = 1, Error = 2 };

/// Runs the command line in `args` (args[0] is the program name) and returns
/// the process exit code. Reports go to `out`; text-mode errors go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace norlund::cli
