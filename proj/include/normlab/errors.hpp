#pragma once

#include <stdexcept>

namespace normlab {

/// Base class for every error thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Grid too small for the declared band.
struct SizingError : Error {
  using Error::Error;
};

/// Mismatched array lengths or bands.
struct ShapeError : Error {
  using Error::Error;
};

/// Input outside an operator's domain.
struct DomainError : Error {
  using Error::Error;
};

/// Invalid argument value.
struct ArgumentError : Error {
  using Error::Error;
};

/// Lebesgue exponent outside (1, inf).
struct UnsupportedExponentError : ArgumentError {
  using ArgumentError::ArgumentError;
};

/// Zero or otherwise degenerate input where a nonzero one is required.
struct DegenerateInputError : Error {
  using Error::Error;
};

}
