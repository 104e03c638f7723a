#pragma once

#include <stdexcept>

namespace qbat {

// Caller-supplied arguments violate a precondition (bad dimensions,
// out-of-range sites, malformed configuration, ...).
struct argument_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A data invariant does not hold (non-Hermitian matrix, unnormalized state,
// negative work from a ground-state start, ...).
struct integrity_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A numerical routine failed (eigensolver did not converge, series did not
// terminate, propagation did not reach the requested tolerance).
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qbat
