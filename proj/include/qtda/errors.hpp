#pragma once

#include <stdexcept>
#include <string>

namespace qtda {

// Invalid caller input: negative scale, bad shapes, out-of-range options.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An operation needed S_k but the complex has no k-simplices.
class EmptyDimensionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Requested simulation does not fit the qubit budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Training data unusable (e.g. a single class).
class DegenerateDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qtda
