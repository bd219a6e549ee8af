#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace coral::cli {

/// Exit codes: 0 success, 1 domain error (or failed validation), 2 usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsage = 2;

/// Radians from "1.5708", "pi/2", "2pi", "-3*pi/4", "0.5pi".
/// Throws std::invalid_argument on anything else.
double parse_angle(std::string_view text);

/// Comma-separated parse_angle values.
std::vector<double> parse_angle_list(std::string_view text);

/// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace coral::cli
