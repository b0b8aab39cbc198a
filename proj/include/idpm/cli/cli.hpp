#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace idpm::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_runtime = 2;

// Runs one subcommand. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv);

} // namespace idpm::cli
