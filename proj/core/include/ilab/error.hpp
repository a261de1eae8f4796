#pragma once

#include <stdexcept>
#include <string>

namespace ilab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter is outside the operation's domain (odd N for Lenz, s out of range, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A result or intermediate would not fit the exact integer range or the memory cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Malformed input data: non-finite coordinates, duplicate points, bad series.
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace ilab
