#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace logsum::cli {

enum ExitCode : int {
    ok = 0,
    usage_error = 2,
    domain_error = 3,
    convergence_failure = 4,
};

/// Runs the logsum-prox command line. args[0] is the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace logsum::cli
