#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fewbody::cli {

enum ExitCode : int { ok = 0, internal_error = 1, tolerance_failure = 2, usage = 64 };

inline constexpr const char* schema_version = "1";

// Runs the front end as if invoked with args (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Decimal text at the given number of significant digits; "inf"/"-inf"/"nan" otherwise.
std::string format_number(double x, int digits = 17);

}  // namespace fewbody::cli
