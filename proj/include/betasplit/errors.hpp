#pragma once

#include <stdexcept>
#include <string>

namespace betasplit {

// Base of every error thrown by the library. The CLI maps subclasses to
// exit codes (usage -> 1, numerical contract -> 2).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

// Argument lies on (or within tolerance of) a pole.
class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

class UnsupportedOrderError : public DomainError {
public:
    using DomainError::DomainError;
};

// Requested work exceeds a configured table/DP/memory budget.
class ResourceError : public Error {
public:
    using Error::Error;
};

class PrecisionError : public Error {
public:
    using Error::Error;
};

class NonconvergenceError : public Error {
public:
    using Error::Error;
};

class SeriesTruncationError : public Error {
public:
    using Error::Error;
};

class InsufficientRootsError : public DomainError {
public:
    using DomainError::DomainError;
};

class UsageError : public Error {
public:
    using Error::Error;
};

}  // namespace betasplit
