#pragma once

#include <stdexcept>
#include <string>

namespace gausslab {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the documented domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

// Evaluation requested within the guard distance of a pole.
class PoleProximityError : public Error {
public:
    using Error::Error;
};

// A term cap was reached before the requested accuracy.
class BudgetExhaustedError : public Error {
public:
    using Error::Error;
};

// Non-integrable singularity inside an integration range.
class SingularityError : public Error {
public:
    using Error::Error;
};

// A computed quantity is not resolved by its own error estimate.
class PrecisionError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

// Sign structure contradicts a previously issued classification.
class ClassificationError : public Error {
public:
    using Error::Error;
};

} // namespace gausslab
