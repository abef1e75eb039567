#pragma once

#include <stdexcept>
#include <string>

namespace intentdbn::io {

/// Input does not follow the documented format (exit code 1 in the CLI).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Required column or member missing.
class SchemaError : public FormatError {
 public:
  using FormatError::FormatError;
};

}  // namespace intentdbn::io
