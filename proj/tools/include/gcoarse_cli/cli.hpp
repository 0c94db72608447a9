#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gcoarse::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line. `args` excludes the program name. Output files are
/// only written once the whole configuration has been validated.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gcoarse::cli
