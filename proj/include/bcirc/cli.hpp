#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bcirc {

/// Runs one CLI command. `args` holds the arguments without the program
/// name; measure arguments name JSON files, with "-" reading `in`.
/// Returns the process exit code: 0 success, 1 invalid input, 2 numerical
/// precondition failure, 3 verification failure.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace bcirc
