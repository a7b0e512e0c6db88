#pragma once

#include <string>
#include <vector>

namespace affect {

/// Parses arguments (argv[0] excluded) and runs the requested stage.
/// Returns the process exit code: 0 success, 2 configuration error,
/// 3 data error, 4 numerical failure. Diagnostics go to stderr.
int run_cli(const std::vector<std::string>& args);
int run_cli(int argc, const char* const* argv);

}  // namespace affect
