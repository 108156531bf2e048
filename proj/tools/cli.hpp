#pragma once

#include <ostream>

namespace gcdh::cli {

// Exit codes: 0 success, 1 usage error, 2 computation error, 3 baseline
// mismatch.
enum ExitCode : int { kOk = 0, kUsage = 1, kCompute = 2, kBaselineMismatch = 3 };

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gcdh::cli
