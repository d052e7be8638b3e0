#pragma once

#include <stdexcept>
#include <string>

namespace gfn {

// Base for all library errors so callers can catch one type.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input: bad rational string, unknown model name, inconsistent arity.
struct UsageError : Error {
    explicit UsageError(const std::string& msg) : Error(msg) {}
};

// Argument outside the supported analytic domain (e.g. |u| beyond the series policy).
struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// Quotient ring is not finite dimensional of the expected dimension
// (discriminant vanishes or the staircase does not match the model basis).
struct DegenerateRingError : Error {
    explicit DegenerateRingError(const std::string& msg) : Error(msg) {}
};

// Iteration failed to reach tolerance; message carries the last iterate.
struct ConvergenceError : Error {
    explicit ConvergenceError(const std::string& msg) : Error(msg) {}
};

// Required external coordinate data was not supplied.
struct MissingDataError : Error {
    explicit MissingDataError(const std::string& msg) : Error(msg) {}
};

// No candidate in the fixed convention set passed the residual gate;
// message carries the per-candidate residual report.
struct ConventionError : Error {
    explicit ConventionError(const std::string& msg) : Error(msg) {}
};

// Adaptive integrator could not proceed (step underflow near a pole).
struct IntegrationError : Error {
    explicit IntegrationError(const std::string& msg) : Error(msg) {}
};

// Requested contraction pair has non-constant spectral weights, so the
// single-pair derivative route does not apply to this model.
struct UnsupportedPairingError : Error {
    explicit UnsupportedPairingError(const std::string& msg) : Error(msg) {}
};

} // namespace gfn
