#pragma once

#include <stdexcept>
#include <string>

namespace hilbert {

/// Raised when an argument violates an operation's precondition
/// (dimension mismatch, out-of-range index, bad parameter).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a quantity is mathematically undefined at the requested point,
/// e.g. a prediction that needs rho(x) > 0 or an integral that diverges.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised when an iterative numerical routine fails to reach its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace hilbert
