#pragma once

#include <stdexcept>
#include <string>

namespace intentdbn::bn {

/// Malformed network or factor: scope/cardinality mismatch, missing CPT, cycle.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Evidence that cannot be applied (state out of range, all-zero likelihood).
class InvalidEvidenceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The evidence has zero joint probability under the model.
class ContradictionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace intentdbn::bn
