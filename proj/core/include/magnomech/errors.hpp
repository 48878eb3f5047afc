#pragma once

#include <stdexcept>
#include <string>

namespace magnomech {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid configuration or parameter file; the message names the offending key.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A numerical procedure failed (eigensolver breakdown, step-size underflow,
/// residual above tolerance, physicality violation).
class NumericError : public Error {
public:
    using Error::Error;
};

/// The drift matrix is not Hurwitz-stable: no stationary Gaussian state exists
/// and the caller must integrate the covariance in time instead.
class NoStationaryState : public Error {
public:
    using Error::Error;
};

} // namespace magnomech
