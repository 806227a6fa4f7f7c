#pragma once

#include <algorithm>
#include <cmath>

// Tolerance helpers used across the test suites. Tolerances are spelled at
// the call site so every bound stays visible in the test that relies on it.

namespace testsupport {

inline bool rel_close(double a, double b, double rel_tol) {
    double scale = std::max(std::fabs(a), std::fabs(b));
    return std::fabs(a - b) <= rel_tol * scale;
}

inline bool abs_close(double a, double b, double abs_tol) {
    return std::fabs(a - b) <= abs_tol;
}

}  // namespace testsupport
