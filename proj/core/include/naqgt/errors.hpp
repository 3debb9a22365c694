#pragma once

#include <stdexcept>
#include <string>

namespace naqgt {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad input: malformed specs, out-of-range parameters, wrong family.
class ValidationError : public Error {
public:
    using Error::Error;
};

class GaugeError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// The input was fine but the numerics cannot deliver a trustworthy answer.
class NumericalError : public Error {
public:
    using Error::Error;
};

class MonopoleProximity : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class GapClosed : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class StepSizeError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class ResolutionError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class RangeError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace naqgt
