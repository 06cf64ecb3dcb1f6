#pragma once

#include <stdexcept>
#include <string>

namespace lab {

// Rejected input: a precondition on the data itself failed.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Requested scales fall below what the discretization supports.
struct ResolutionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Conformal fit did not meet its boundary budget (carries diagnostics text).
struct FitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace lab
