#pragma once

#include <cmath>
#include <limits>

#include "gordon/grid.hpp"

namespace gordon::detail {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

inline double guarded_div(double num, double den) {
    if (!(std::abs(den) >= kSingularDenominator)) {
        return kNaN;
    }
    return num / den;
}

/// 2 artanh(t) in log form; NaN outside (−1, 1) or within 1e-8 of ±1.
inline double two_artanh(double t) {
    if (!(std::abs(1.0 - t) >= kSingularDenominator) || !(std::abs(1.0 + t) >= kSingularDenominator) ||
        !(std::abs(t) < 1.0)) {
        return kNaN;
    }
    return std::log1p(2.0 * t / (1.0 - t));
}

}  // namespace gordon::detail
