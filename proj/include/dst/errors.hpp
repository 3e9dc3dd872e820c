#pragma once

#include <stdexcept>
#include <string>

namespace dst {

/// Malformed input files or invalid option values (CLI exit code 2).
struct format_error : std::runtime_error {
    explicit format_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Data violating a geometric contract: not an immersion, wrong causal
/// type, constraint failure (CLI exit code 3).
struct geometry_error : std::runtime_error {
    explicit geometry_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Solver non-convergence or inconsistent input data (CLI exit code 5).
struct solver_error : std::runtime_error {
    explicit solver_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace dst
