#pragma once

#include <stdexcept>
#include <string>

namespace repeatkit {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Malformed or inconsistent input data (e.g. a subject with one replicate).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// The requested design cannot be achieved by any finite sample size.
class InfeasibleError : public Error {
public:
    using Error::Error;
};

/// An iterative method ran out of budget. Carries the best estimate reached.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double estimate, double error_bound)
        : Error(what), estimate_(estimate), error_bound_(error_bound) {}

    double estimate() const noexcept { return estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double estimate_;
    double error_bound_;
};

}  // namespace repeatkit
