#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sc {

// Runs one CLI invocation; args exclude the program name. Exit codes:
// 0 success, 1 validation failure, 2 verification failure, 3 parse error.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace sc
