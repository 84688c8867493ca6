#pragma once

#include <stdexcept>
#include <string>

namespace cheegraph {

// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed files, bad parameters, rejected flags. CLI exit code 2.
class InputError : public Error {
public:
    explicit InputError(const std::string& msg) : Error(msg) {}
};

// Requested exact enumeration exceeds the configured budget. CLI exit code 3.
class CapacityError : public Error {
public:
    explicit CapacityError(const std::string& msg) : Error(msg) {}
};

// A mathematical hypothesis of the requested operation does not hold
// (non-intrinsic metric, negative slack, ...). CLI exit code 3.
class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& msg) : Error(msg) {}
};

// Iterative eigensolver failed to reach the residual tolerance.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& msg, double achieved_residual)
        : Error(msg), achieved_residual_(achieved_residual) {}
    double achieved_residual() const { return achieved_residual_; }

private:
    double achieved_residual_;
};

}  // namespace cheegraph
