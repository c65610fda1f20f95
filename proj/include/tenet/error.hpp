#pragma once

#include <stdexcept>
#include <string>

namespace tenet {

// Base class for every error raised by the engine. The subclasses map onto the
// CLI exit codes: usage 1, data 2, numeric 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad arguments or configuration.
class UsageError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent input data.
class DataError : public Error {
 public:
  using Error::Error;
};

// A quantity is mathematically undefined for the given input.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace tenet
