#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nonfloquet::cli {

/// Exit codes of run_cli.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

/// Runs one subcommand. Results go to --out when given, otherwise to `out`;
/// diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "A:B:N" into N evenly spaced values from A to B inclusive, or a
/// comma-separated list of values.
std::vector<double> parse_grid(const std::string& text);

}  // namespace nonfloquet::cli
