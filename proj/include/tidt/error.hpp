#pragma once

#include <stdexcept>
#include <string>

namespace tidt {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Tensor extents do not fit the requested operation.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// A scalar or integer argument lies outside its admissible range.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Iterative kernel failed (SVD non-convergence, non-finite iterates, ...).
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Malformed file or text input.
class FormatError : public Error {
public:
    using Error::Error;
};

} // namespace tidt
