#pragma once

#include <stdexcept>

namespace antichain {

/// Invalid parameters: bad lambda, depth out of range, non-strict f in a surface.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Argument outside the domain of an operation (coordinates, dimensions).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Requested resolution exceeds the precision the function spec was built with.
struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Evaluation count would exceed the configured budget.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InsufficientDataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace antichain
