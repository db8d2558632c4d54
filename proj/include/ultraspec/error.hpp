#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ultraspec {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Gamma function requested at a non-positive integer.
class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Fractional power evaluated at the origin where it blows up.
class SingularEvaluationError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Invalid basis / quadrature parameter (lambda, degree, ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

class SingularMatrixError : public Error {
public:
    SingularMatrixError(std::size_t pivot_index, double pivot)
        : Error("singular matrix: pivot " + std::to_string(pivot_index) +
                " has magnitude " + std::to_string(pivot)),
          pivot_index_(pivot_index) {}

    std::size_t pivot_index() const noexcept { return pivot_index_; }

private:
    std::size_t pivot_index_;
};

/// Iterative method failed (e.g. a quadrature node did not converge).
class NumericalError : public Error {
public:
    NumericalError(const std::string& what, std::ptrdiff_t index = -1)
        : Error(what), index_(index) {}

    std::ptrdiff_t index() const noexcept { return index_; }

private:
    std::ptrdiff_t index_;
};

/// Syntax error in an expression, with the byte offset of the problem.
class ParseError : public Error {
public:
    ParseError(std::size_t offset, const std::string& message)
        : Error("parse error at offset " + std::to_string(offset) + ": " + message),
          offset_(offset), message_(message) {}

    std::size_t offset() const noexcept { return offset_; }
    const std::string& message() const noexcept { return message_; }

private:
    std::size_t offset_;
    std::string message_;
};

/// Domain violation while evaluating an expression.
class EvalError : public Error {
public:
    using Error::Error;
};

/// Well-formed problem the solver cannot handle (e.g. fractional order on [A,B] with A != 0).
class UnsupportedProblemError : public Error {
public:
    using Error::Error;
};

/// Problem definition violates its invariants (BC count, orders, ...).
class InvalidProblemError : public Error {
public:
    using Error::Error;
};

/// Newton iteration did not converge.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

}  // namespace ultraspec
