#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tsimp {

/// Runs the command line with args (without the program name). Returns 0 on
/// success, 1 on usage errors, 2 on data errors and 3 for a non-generic epsilon.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tsimp
