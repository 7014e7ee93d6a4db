#ifndef PROCEVO_TOOLS_CLI_HPP
#define PROCEVO_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace procevo::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsageError = 2;

/// Runs one command line (without the program name). Diagnostics go to
/// `err`, results to `out` unless --out names a file.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace procevo::cli

#endif
