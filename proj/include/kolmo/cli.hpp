#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kolmo::cli {

enum ExitCode { kOk = 0, kVerifyFailed = 1, kUsage = 2 };

/// Entry point of the `kolmo` tool. Table output goes to `out` unless --out
/// names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kolmo::cli
