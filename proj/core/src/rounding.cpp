#include "coral/rounding.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace coral {

double round_to(double x, int decimals, Rounding mode) {
    if (!std::isfinite(x)) {
        return x;
    }
    const double scale = std::pow(10.0, decimals);
    const double scaled = x * scale;
    const double nearest = std::round(scaled);
    double whole;
    if (std::abs(scaled - nearest) <= 1e-9 * std::max(1.0, std::abs(scaled))) {
        whole = nearest;
    } else if (mode == Rounding::TowardZero) {
        whole = std::trunc(scaled);
    } else {
        whole = nearest; // std::round is half-away-from-zero
    }
    return whole / scale;
}

std::string format_rounded(double x, int decimals, Rounding mode) {
    double r = round_to(x, decimals, mode);
    if (r == 0.0) {
        r = 0.0; // drop the sign of -0
    }
    std::array<char, 64> buf{};
    std::snprintf(buf.data(), buf.size(), "%.*f", decimals, r);
    return buf.data();
}

std::string format_shortest(double x) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x == 0.0 ? 0.0 : x);
    return std::string(buf.data(), end);
}

std::string format_general(double x, int significant) {
    std::array<char, 64> buf{};
    std::snprintf(buf.data(), buf.size(), "%.*g", significant, x == 0.0 ? 0.0 : x);
    return buf.data();
}

} // namespace coral
