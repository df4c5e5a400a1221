#pragma once

#include <ostream>
#include <vector>
#include <string>

namespace scpd::cli {

enum ExitCode : int {
    kOk = 0,
    kCheckFailed = 1,
    kUsage = 2,
    kIo = 3,
    kNumeric = 4,
};

/// Entry point shared by the executable and the tests. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace scpd::cli
