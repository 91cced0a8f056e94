#pragma once

#include <stdexcept>
#include <string>

namespace qchihara {

/// Parameter outside the domain where a formula is defined (|q| >= 1, x off support, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A documented precondition of an operation was violated by the caller.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Exact polynomial division left a nonzero remainder where none was expected.
/// In elimination code this always indicates a bug, never bad input.
class InexactDivision : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Evaluation hit a variable with no assigned value.
class UnassignedVariable : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Numeric procedure failed to reach its tolerance within its budget.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace qchihara
