#pragma once

#include <stdexcept>
#include <string>

namespace luxlink {

// Bad or inconsistent configuration input (JSON scenario, CLI flags).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A constraint system with no feasible solution (lighting target unreachable,
// user with no usable link under the selected scheme).
struct InfeasibleError : std::runtime_error {
    explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

// Instance exceeds the exact solver limits and heuristic fallback was not allowed.
struct SizeLimitError : std::runtime_error {
    explicit SizeLimitError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace luxlink
