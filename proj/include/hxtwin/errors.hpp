#pragma once

#include <stdexcept>
#include <string>

namespace hxtwin {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a mean or closed-form root.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Fluid property query outside the model's validity hull.
class OutOfRange : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Table axis that is not strictly increasing. `index` is the offending
/// position along the axis.
class NonMonotonicAxis : public Error {
public:
    NonMonotonicAxis(const std::string& axis, std::size_t index)
        : Error(axis + " axis not strictly increasing at index " + std::to_string(index)),
          axis_(axis), index_(index) {}
    const std::string& axis() const noexcept { return axis_; }
    std::size_t index() const noexcept { return index_; }

private:
    std::string axis_;
    std::size_t index_;
};

/// Physical root bracket is inverted for the given state/input combination.
class BracketError : public Error {
public:
    using Error::Error;
};

class NoSolution : public Error {
public:
    using Error::Error;
};

class NonPositiveConductance : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class SingularInnovationCovariance : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class WindowOutOfRange : public Error {
public:
    using Error::Error;
};

}  // namespace hxtwin
