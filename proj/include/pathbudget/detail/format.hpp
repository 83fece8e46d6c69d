#pragma once

#include <cstdio>
#include <string>

namespace pathbudget::detail {

// 17 significant digits round-trip any finite double exactly.
[[nodiscard]] inline std::string format_double(double value, int significant_digits = 17) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.*g", significant_digits, value);
    return buffer;
}

}  // namespace pathbudget::detail
