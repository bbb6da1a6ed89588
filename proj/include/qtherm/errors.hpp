#pragma once

#include <stdexcept>
#include <string>

namespace qtherm {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Precondition violations: bad dimensions, non-Hermitian input where a
// Hermitian matrix is required, unknown family names, malformed spec files.
struct InvalidInput : Error {
  using Error::Error;
};

// A computation that cannot proceed on valid input, e.g. the thermal state
// is still entangled at the top of the scanned temperature range.
struct ComputationError : Error {
  using Error::Error;
};

}  // namespace qtherm
