#pragma once

#include <stdexcept>
#include <string>

namespace extime {

// Violated contract / unusable input.  CLI maps this to exit code 2.
struct precondition_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Computation started but could not reach the requested accuracy.
// CLI maps this to exit code 1.
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace extime
