#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace adtrack::cli {

/// Runs the command line `args` (without the program name). Returns the
/// process exit status: 0 on success, 1 on a runtime or sequence-level
/// failure, 2 on a usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace adtrack::cli
