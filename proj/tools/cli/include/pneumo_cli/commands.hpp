#pragma once

#include <iosfwd>

namespace pneumo::cli {

enum ExitCode : int {
    kOk = 0,
    kConfigError = 1,
    kNumericError = 2,
    kIncompleteAnalysis = 3,
};

// Full command-line entry point; main() only forwards to it.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pneumo::cli
