#pragma once

#include <stdexcept>
#include <string>

namespace anosov {

// Error categories map onto CLI exit codes: input errors exit 1, numeric and
// resource failures exit 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

class ResourceError : public Error {
 public:
  using Error::Error;
};

class UnsupportedError : public InputError {
 public:
  using InputError::InputError;
};

}  // namespace anosov
