#pragma once

namespace lbsnet {

inline constexpr const char* kVersion = "0.1.0";

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitUsage = 2, kExitParse = 3, kExitRuntime = 4 };

/// Entry point of the `lbsnet` tool; returns the process exit code.
int run_cli(int argc, const char* const* argv);

}  // namespace lbsnet
