#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace maglab {

// Numerical failure inside a kernel (vanishing norm, lost positivity, ...).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerical failure at a specific step of a trajectory/replay loop.
struct StepError : NumericalError {
    StepError(std::size_t step_index, const std::string& what)
        : NumericalError("step " + std::to_string(step_index) + ": " + what), step(step_index) {}
    std::size_t step;
};

// Continued-fraction / spectral solver did not converge at the requested depth.
struct NonConvergence : NumericalError {
    using NumericalError::NumericalError;
};

// Malformed record file; line is 1-based.
struct ParseError : std::runtime_error {
    ParseError(int line_number, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_number) + ": " + what), line(line_number) {}
    int line;
};

}  // namespace maglab
