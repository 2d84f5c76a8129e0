#pragma once

#include <stdexcept>
#include <string>

namespace qprobe {

// All library errors derive from Error so callers can catch one type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class PsdViolation : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class InvalidState : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class Unreconstructable : public Error {
public:
    using Error::Error;
};

class UnsupportedCase : public Error {
public:
    using Error::Error;
};

// Delta mu = 0: the inequality only yields sigma >= 0.
class DegenerateControl : public Error {
public:
    using Error::Error;
};

class AggregationError : public Error {
public:
    AggregationError(const std::string& what, double no_info_fraction)
        : Error(what), no_info_fraction_(no_info_fraction) {}
    double no_info_fraction() const noexcept { return no_info_fraction_; }

private:
    double no_info_fraction_;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace qprobe
