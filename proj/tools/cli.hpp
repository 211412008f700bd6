#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nbpr::cli {

/// Exit codes: 0 success, 1 computational failure, 2 usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cli_main(int argc, char** argv);

}  // namespace nbpr::cli
