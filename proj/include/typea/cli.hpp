#pragma once

// Entry point of the typea command-line tool.
//
// Exit codes: 0 success, 1 input error (flags, schema, domain), 2 numeric or
// consistency failure (including sweep disagreements).

#include <iosfwd>
#include <string>
#include <vector>

namespace typea {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitNumeric = 2;

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace typea
