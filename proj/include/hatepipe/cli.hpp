#pragma once

#include <iosfwd>

namespace hatepipe {

// Entry point of the hatepipe command line. Returns the process exit code:
// 0 success, 1 input or validation error, 2 training or evaluation failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hatepipe
