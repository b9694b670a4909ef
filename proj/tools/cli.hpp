#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace motifsig::cli {

enum ExitCode : int { kSuccess = 0, kUsageError = 1, kDataError = 2 };

/// Runs one `motifsig` invocation. `args` excludes the program name.
/// Output that would go to stdout ("-" paths included) is written to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace motifsig::cli
