#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace helmholtz::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kUsage = 2 };

/// "a:b:c" (start, inclusive stop, step), "a..b" (integers), "a,b,c" or a
/// single number. Throws std::invalid_argument on anything else.
std::vector<double> parse_range(const std::string& text);

/// Runs one subcommand. args excludes the program name. Every run that gets
/// past argument parsing writes <out>/manifest.json.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace helmholtz::cli
