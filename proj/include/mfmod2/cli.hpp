#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mfmod2::cli {

enum ExitCode { kOk = 0, kCheckFailed = 1, kUsage = 2 };

/// Runs one command line (without the program name). Output is deterministic.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mfmod2::cli
