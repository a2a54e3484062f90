#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tdl {

/// Runs one command line (without the program name). Returns the exit code:
/// 0 success, 1 input or validation error, 2 usage error, 3 internal defect.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tdl
