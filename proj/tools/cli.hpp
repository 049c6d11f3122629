#ifndef CHARCLASS_TOOLS_CLI_HPP
#define CHARCLASS_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace charclass::cli {

inline constexpr int kSchemaVersion = 1;

/// Runs the command line `args` (without the program name). Text goes to
/// `out`, diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace charclass::cli

#endif  // CHARCLASS_TOOLS_CLI_HPP
