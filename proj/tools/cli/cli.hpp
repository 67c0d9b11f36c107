#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fracvar::cli {

enum ExitCode : int {
    kOk = 0,
    kConfigError = 2,
    kNumericalError = 3,
    kVerificationFailed = 4,
};

/// Entry point shared by the executable and the tests. argv[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace fracvar::cli
