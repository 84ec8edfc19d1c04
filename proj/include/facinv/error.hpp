#pragma once

#include <stdexcept>
#include <string>

namespace facinv {

// Base for every failure raised by the library. The CLI maps Error to exit
// code 1 and reports what() on a single line.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File could not be opened, read, written or renamed.
class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed payload: bad magic, truncated data, unknown code, non-finite value.
class FormatError : public Error {
 public:
  using Error::Error;
};

// Dimension, channel or length disagreement between two objects.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Argument outside the domain an operation is defined on.
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace facinv
