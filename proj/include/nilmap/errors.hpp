#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nilmap {

// Operands live in different ambient rings or have incompatible shapes.
class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// An input violated an operation's documented precondition.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// The input does not have the polynomial-map shape an operation works on.
class ShapeError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

// Top z-coefficients (u_d, v_d) do not have a nilpotent Jacobian in (x, y).
class NotNilpotentTop : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

// No coordinate ordering makes the map triangular; classify it first.
class NotTriangularizable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A constructed object failed its own verification step.
class ConstructionMismatch : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// A guarantee of a proven theorem failed on an input meeting its hypotheses. Carries the
// serialized instance; never caught and recovered from inside the library.
class TheoremViolation : public std::runtime_error {
public:
    TheoremViolation(std::string result, std::string detail, std::string instance_json)
        : std::runtime_error(result + ": " + detail),
          result_(std::move(result)),
          instance_(std::move(instance_json)) {}

    const std::string& result() const { return result_; }
    const std::string& instance() const { return instance_; }

private:
    std::string result_;
    std::string instance_;
};

class ParseError : public std::invalid_argument {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : std::invalid_argument(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line),
          column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace nilmap
