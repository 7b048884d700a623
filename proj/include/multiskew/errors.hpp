#pragma once

#include <stdexcept>
#include <string>

namespace multiskew {

/// Malformed or unreadable input data (missing file, bad cell, duplicate label).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A covariance (or projected variance) is too close to singular to invert.
class SingularityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition violations (bad dimension, components >= d, ...) are reported
// as std::invalid_argument so callers can tell usage errors from numerical ones.

}  // namespace multiskew
