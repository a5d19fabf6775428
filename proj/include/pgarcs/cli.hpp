#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace pgarcs {

inline constexpr const char* kToolVersion = "1.0.0";

/// Exit codes shared by every subcommand.
enum ExitCode : int { kExitOk = 0, kExitError = 1, kExitUndecided = 2 };

/// FNV-1a 64-bit digest of a byte string, as 16 hex digits.
std::string digest_hex(const std::string& bytes);

/// Runs the command line (args excludes the program name). Reports go to
/// `out` or to the --out file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pgarcs
