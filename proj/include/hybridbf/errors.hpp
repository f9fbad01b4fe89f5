#pragma once

#include <stdexcept>
#include <string>

namespace hybridbf {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid array/scenario/experiment configuration (names the offending field).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Mismatched vector/matrix dimensions.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Quantity undefined for the given input (zero beamformer, etc).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Desired direction lies in the interference span, or steering vector is zero.
class DegenerateGeometryError : public Error {
public:
    using Error::Error;
};

class IllConditionedError : public Error {
public:
    using Error::Error;
};

class EmptyDataError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace hybridbf
