#pragma once

#include <stdexcept>
#include <string>

namespace idpm {

// Invalid construction parameters (odd embedding dim, T = 0, rate outside [0,1], ...).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Mismatched vector or matrix dimensions.
class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Operation called in the wrong lifecycle state (backward before forward, sampling an unfitted model).
class StateError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Input outside the mathematical domain of an operation (zero vector, gradient at a singularity).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// NaN/Inf produced during a numeric loop, divergence, or starvation of a sampler.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed persisted data. `field()` names the part of the file that failed validation.
class FormatError : public std::runtime_error {
public:
    FormatError(std::string field, const std::string& what)
        : std::runtime_error(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

} // namespace idpm
