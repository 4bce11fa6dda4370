#pragma once

#include <stdexcept>
#include <string>

namespace ximod {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the operation's domain (or a theorem hypothesis
/// is violated).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Evaluation at a pole.  `where` names the pole location.
class PoleError : public DomainError {
public:
    PoleError(const std::string& what, std::string where)
        : DomainError(what + " (pole at " + where + ")"), location(std::move(where)) {}
    std::string location;
};

/// Invalid configuration (precision, grids, tolerances).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// The integrand or summand returned NaN/inf.
class EvaluationError : public Error {
public:
    using Error::Error;
};

/// A semi-infinite integrand does not decay as its hint declares.
class TailDivergenceError : public Error {
public:
    using Error::Error;
};

/// Observed series terms contradict the declared tail model.
class ModelMismatchError : public Error {
public:
    using Error::Error;
};

/// Mellin–Barnes abscissa on the wrong side of a pole.
class ContourError : public DomainError {
public:
    using DomainError::DomainError;
};

/// A numerical oracle (extrapolation) became unstable.
class OracleFailure : public Error {
public:
    using Error::Error;
};

/// A quadrature failed to converge where the caller required convergence.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

}  // namespace ximod
