#pragma once

// Command-line front end. Exit codes: 0 success, 1 domain error, 2 usage or parse error.

#include <ostream>
#include <string>
#include <vector>

namespace hw {

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hw
