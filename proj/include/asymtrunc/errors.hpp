#pragma once

#include <stdexcept>

namespace asymtrunc {

// Parameter or precondition violation. The CLI maps this to exit status 1.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// File could not be opened, read or written. The CLI maps this to exit status 2.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File opened fine but its contents are not a valid field/report.
class FormatError : public IoError {
 public:
  using IoError::IoError;
};

}  // namespace asymtrunc
