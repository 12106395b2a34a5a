#pragma once

#include <stdexcept>
#include <string>

namespace logsum {

/// An argument lies outside the domain of the requested function.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The operation is only defined in the nonconvex regime (sqrt(lambda) > epsilon).
class RegimeError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A caller-side precondition on the input layout was violated.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An iterative routine exhausted its iteration budget.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace logsum
