#pragma once

#include <stdexcept>
#include <string>

namespace cornerpump {

/// Invalid arguments: dimension mismatch, out-of-range site, bad parameters.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// |M| = 1 or |N| = 1 makes the geometric normalization sums singular.
class SingularRatioError : public InputError {
 public:
  using InputError::InputError;
};

/// Non-finite amplitudes, violated stability guard, excessive norm drift.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cornerpump
