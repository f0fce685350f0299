#pragma once

#include <string>
#include <vector>

namespace mixinfo {

// Parses and runs one command line (program name excluded from `args`).
// Exit code: 0 success, 1 verification or runtime failure, 2 usage error.
int run_cli(std::vector<std::string> args);
int run_cli(int argc, const char* const* argv);

}  // namespace mixinfo
