#ifndef MAXSAT_CLI_HPP
#define MAXSAT_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace maxsat {

// Exit codes.
inline constexpr int kExitYes = 10;
inline constexpr int kExitNo = 20;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitParse = 2;

/// Runs the command-line front end on the given arguments (excluding the
/// program name). Results go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace maxsat

#endif
