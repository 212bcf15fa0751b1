#pragma once

#include <algorithm>
#include <cmath>

namespace farnet {

/// Relative tolerance used for all length comparisons.
inline constexpr double kRelTol = 1e-9;
/// Absolute floor near zero.
inline constexpr double kAbsTol = 1e-12;
/// Breakpoints on an edge closer than this (in lambda) are merged.
inline constexpr double kBreakpointMerge = 1e-9;
/// Pieces shorter than this (in lambda) are elided.
inline constexpr double kDegenerateLength = 1e-12;

inline double tolerance_for(double scale) {
    return std::max(kRelTol * std::abs(scale), kAbsTol);
}

inline bool approx_equal(double a, double b) {
    return std::abs(a - b) <= tolerance_for(std::max(std::abs(a), std::abs(b)));
}

inline bool approx_less_equal(double a, double b) {
    return a <= b + tolerance_for(std::max(std::abs(a), std::abs(b)));
}

}  // namespace farnet
