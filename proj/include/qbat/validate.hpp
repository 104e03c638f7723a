#pragma once

#include <string>
#include <vector>

namespace qbat {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

enum class FaultInjection {
  none,
  // Flips the sign of one off-diagonal entry (upper triangle only) of the
  // assembled Hamiltonian before the integrity checks run. Negative control:
  // the Hermiticity check must catch it.
  corrupt_hamiltonian_sign,
};

/// Oracle agreement panel plus the invariant suite. Deterministic output
/// order; every check runs even after failures. Under fault injection the
/// suite stops after the operator-integrity section, which must have caught
/// the fault.
std::vector<CheckResult> run_validation_panel(
    FaultInjection fault = FaultInjection::none);

}  // namespace qbat
