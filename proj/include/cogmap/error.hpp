#pragma once

#include <stdexcept>
#include <string>

namespace cogmap {

// Bad input: malformed files, violated preconditions, unknown words.
// The CLI maps this to exit code 1.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical breakdown during training (NaN/Inf in loss or parameters).
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cogmap
