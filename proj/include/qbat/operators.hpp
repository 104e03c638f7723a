#pragma once

#include <Eigen/Dense>

#include "qbat/chain.hpp"

namespace qbat {

/// Dense complex matrix validated to be Hermitian on construction
/// (entry-wise, within 1e-12 of the largest entry magnitude) and to have a
/// power-of-two dimension.
///
/// Basis convention used throughout: basis index b stores site k in bit
/// (n_spins-1-k), i.e. site 0 owns the most significant bit; bit value 1
/// means spin-down (sigma_z eigenvalue -1).
class HermitianOperator {
 public:
  explicit HermitianOperator(Eigen::MatrixXcd entries);

  const Eigen::MatrixXcd& matrix() const { return mat_; }
  Eigen::Index dim() const { return mat_.rows(); }

 private:
  Eigen::MatrixXcd mat_;
};

enum class PauliAxis { X, Y, Z };

/// Single-site Pauli operator embedded in the N-spin space:
/// I x ... x sigma^axis x ... x I with the Pauli at `site`.
HermitianOperator pauli_at(PauliAxis axis, int site, int n_spins);

/// H1 = B * sum_i sigma_z^i.  Diagonal entry for basis index b is
/// B * (N - 2*popcount(b)).
HermitianOperator build_field_term(const ChainSpec& spec);

/// H2 = -(1/2) sum_{i<j} g_ij [ (1+gamma) X_i X_j + (1-gamma) Y_i Y_j ].
HermitianOperator build_interaction(const ChainSpec& spec);

/// H0 = H1 + H2.
HermitianOperator build_battery_hamiltonian(const ChainSpec& spec);

/// D = sum_i sigma_z^i, the generator the charging field couples to.
HermitianOperator build_drive_generator(int n_spins);

/// Diagonal of D as a real vector: entry b = n_spins - 2*popcount(b).
Eigen::VectorXd total_sz_diagonal(int n_spins);

}  // namespace qbat
