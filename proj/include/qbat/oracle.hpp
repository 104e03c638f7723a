#pragma once

#include "qbat/dynamics.hpp"

namespace qbat {

/// Density matrix with validated Hermiticity, unit trace, and positivity
/// (eigenvalues >= -1e-10). Test-side representation of rho(tau).
class DensityMatrix {
 public:
  explicit DensityMatrix(Eigen::MatrixXcd entries);

  static DensityMatrix pure(const QuantumState& psi);
  static DensityMatrix maximally_mixed(Eigen::Index dim);

  const Eigen::MatrixXcd& matrix() const { return mat_; }
  Eigen::Index dim() const { return mat_.rows(); }
  double purity() const;  // Tr[rho^2]

 private:
  Eigen::MatrixXcd mat_;
};

/// Brute-force reference propagation: a literal left-endpoint ordered product
/// of step exponentials, Prod_k exp(-i dt H_c(k dt)), applied oldest first.
/// First-order accurate; meant to run at tiny dt as an independent check.
QuantumState brute_force_propagate(const ChainSpec& spec,
                                   const DriveProtocol& drive,
                                   const QuantumState& psi0, double tau_max,
                                   double dt_fine);

/// rho(tau_max) under the same midpoint scheme as the main path, applied as
/// U rho U^dagger per step, with the same whole-run halving control. The
/// refinement deviation is measured as |drho|_F / sqrt(2) so that pure inputs
/// converge at the same level as the state-vector path.
DensityMatrix density_matrix_propagate(const ChainSpec& spec,
                                       const DriveProtocol& drive,
                                       const DensityMatrix& rho0,
                                       double tau_max,
                                       const PropagationSettings& settings);

}  // namespace qbat
