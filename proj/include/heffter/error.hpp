#pragma once

#include <stdexcept>
#include <string>

namespace heffter {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text (array files, solution files, embedding files).
class ParseError : public Error {
public:
    using Error::Error;
};

/// A precondition on parameters or structure does not hold.
class HypothesisError : public Error {
public:
    using Error::Error;
};

/// An exhaustive search would exceed the configured budget.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

/// A formula was evaluated outside its domain (e.g. derangements of a negative count).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Raised when an internal consistency check fails; indicates a bug, never bad input.
class InternalError : public Error {
public:
    using Error::Error;
};

} // namespace heffter
