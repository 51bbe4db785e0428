#pragma once

#include <stdexcept>
#include <string>

namespace xychain {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DecompositionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when a finite-difference step produced F = 0; callers retry with a
// smaller step.
struct StepTooLargeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StatisticsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AnalysisError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace xychain
