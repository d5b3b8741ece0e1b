#pragma once

#include <stdexcept>
#include <string>

namespace purfit {

// Bad schema, category, subset or parameter value.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A marginal system contradicts itself after zero-propagation.
class InfeasibilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Reference distribution vanishes where a positive marginal must be met.
class IllPosedReferenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// KL divergence requested across disjoint supports.
class SupportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// CSV record cannot be mapped onto the declared schema.
class IngestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace purfit
