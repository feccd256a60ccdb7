#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qmatrix {

/// Runs the command line (args excludes the program name) and returns the
/// exit code: 0 all checks pass, 1 an identity failed, 2 configuration or
/// data error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qmatrix
