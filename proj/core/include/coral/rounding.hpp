#pragma once

#include <string>

namespace coral {

enum class Rounding {
    TowardZero,       ///< truncation; the rule the reference tables follow
    HalfAwayFromZero,
};

/// Rounds x to `decimals` places. Values within 1e-9 (relative, in scaled units)
/// of a representable boundary snap to it so that 0.29 does not truncate to 0.28.
double round_to(double x, int decimals, Rounding mode);

/// Fixed-point text of round_to(x, decimals, mode); never prints "-0.00".
std::string format_rounded(double x, int decimals, Rounding mode);

/// Shortest decimal text that round-trips to the same double; -0 prints as 0.
std::string format_shortest(double x);

/// Fixed "%.*g" text with the given significant digits.
std::string format_general(double x, int significant = 12);

} // namespace coral
