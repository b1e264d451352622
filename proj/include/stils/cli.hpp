#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace stils {

/// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "STILS_OUTPUT_DIR";

/// Entry point of the `stils` command line tool; `args` excludes the program
/// name. Returns the process exit status.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stils
