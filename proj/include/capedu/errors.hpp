#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace capedu {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Failures that arise while evaluating or integrating a model. Carries the
/// simulation time at which the failure happened when it is known.
class NumericError : public Error {
public:
    explicit NumericError(const std::string& what,
                          double time = std::numeric_limits<double>::quiet_NaN())
        : Error(what), time_(time) {}

    double time() const noexcept { return time_; }
    bool has_time() const noexcept { return time_ == time_; }

private:
    double time_;
};

/// K or E left the positive orthant where the production function is defined.
class DomainError : public NumericError {
public:
    using NumericError::NumericError;
};

class StepLimitExceeded : public NumericError {
public:
    using NumericError::NumericError;
};

class NonFiniteState : public NumericError {
public:
    using NumericError::NumericError;
};

/// alpha + beta == 1: no isolated positive equilibrium exists.
class StructurallyUnstable : public Error {
public:
    using Error::Error;
};

/// Consumption target p leaves no positive education share.
class InvalidTarget : public Error {
public:
    using Error::Error;
};

class NoSignChange : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

/// A constraint on the inputs is violated. field() names the offending key.
class ValidationError : public Error {
public:
    ValidationError(std::string field, const std::string& what)
        : Error(what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

class EmptySeries : public Error {
public:
    using Error::Error;
};

} // namespace capedu
