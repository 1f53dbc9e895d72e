#pragma once

#include <stdexcept>
#include <string>

namespace todatt {

/// Input violates a documented precondition (bad index range, broken
/// anti-symmetry, malformed matrices, ...).
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A frame could not be brought to Toda form: spectrum is not an omega-cycle,
/// eta degenerates on an eigenline, or no omega-twin isomorphism exists.
class ClassificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Newton iteration stopped before reaching the requested residual.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double last_residual, int iterations)
        : std::runtime_error(what), last_residual_(last_residual), iterations_(iterations) {}

    double last_residual() const { return last_residual_; }
    int iterations() const { return iterations_; }

private:
    double last_residual_;
    int iterations_;
};

}  // namespace todatt
