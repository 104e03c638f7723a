#pragma once

#include <Eigen/Dense>

#include "qbat/operators.hpp"

namespace qbat {

/// Normalized pure state over the computational basis.
class QuantumState {
 public:
  /// Validates |<psi|psi> - 1| <= 1e-10 and a power-of-two dimension.
  explicit QuantumState(Eigen::VectorXcd amplitudes);

  static QuantumState basis_state(Eigen::Index dim, Eigen::Index index);

  const Eigen::VectorXcd& amplitudes() const { return amps_; }
  Eigen::Index dim() const { return amps_.size(); }

 private:
  Eigen::VectorXcd amps_;
};

struct SpectralSummary {
  double e_min = 0.0;
  double e_max = 0.0;
  double gap = 0.0;        // e1 - e0
  bool degenerate = false; // gap below 1e-10 * max(1, max|entry|)
};

struct GroundStateResult {
  double energy;
  QuantumState state;
  SpectralSummary summary;
};

/// Full Hermitian eigendecomposition; returns the lowest eigenpair and the
/// spectral bounds. The eigenvector phase is canonical: the largest-magnitude
/// amplitude (lowest basis index on ties) is made real and positive.
GroundStateResult ground_state(const HermitianOperator& h);

/// <psi|H|psi> as a real number. The imaginary residue is checked against
/// 1e-10 and rejected as an integrity error beyond that.
double energy_expectation(const HermitianOperator& h, const QuantumState& psi);

}  // namespace qbat
