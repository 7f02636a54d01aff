#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rungs::cli {

inline constexpr int kSchemaVersion = 1;

/// Runs one command line (without the program name). Exit status: 0 ok,
/// 1 validation error, 2 numeric failure; `verify` returns 3 when a check fails.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rungs::cli
