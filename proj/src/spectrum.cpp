#include "qbat/spectrum.hpp"

#include <bit>
#include <cmath>
#include <string>

namespace qbat {

namespace {
constexpr Eigen::Index kMaxEigDim = 4096;
}

QuantumState::QuantumState(Eigen::VectorXcd amplitudes)
    : amps_(std::move(amplitudes)) {
  if (amps_.size() < 1 ||
      !std::has_single_bit(static_cast<std::size_t>(amps_.size()))) {
    throw argument_error("state dimension must be a power of two");
  }
  const double nrm2 = amps_.squaredNorm();
  if (std::abs(nrm2 - 1.0) > 1e-10) {
    throw integrity_error("state is not normalized: |psi|^2 = " +
                          std::to_string(nrm2));
  }
}

QuantumState QuantumState::basis_state(Eigen::Index dim, Eigen::Index index) {
  if (index < 0 || index >= dim) {
    throw argument_error("basis index out of range");
  }
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  v(index) = 1.0;
  return QuantumState(std::move(v));
}

namespace {

// Rotate the global phase so the largest-magnitude amplitude is real and
// positive. Magnitudes within 1e-12 relative count as ties, and the lowest
// basis index wins, so analytically equal amplitudes pick a stable leader.
void canonicalize_phase(Eigen::VectorXcd& v) {
  Eigen::Index best = 0;
  double best_mag = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v(i));
    if (mag > best_mag * (1.0 + 1e-12)) {
      best_mag = mag;
      best = i;
    }
  }
  if (best_mag == 0.0) return;
  v *= std::abs(v(best)) / v(best);
}

}  // namespace

GroundStateResult ground_state(const HermitianOperator& h) {
  if (h.dim() > kMaxEigDim) {
    throw argument_error("operator dimension exceeds eigensolver cap of " +
                         std::to_string(kMaxEigDim));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.matrix());
  if (solver.info() != Eigen::Success) {
    throw numeric_error("Hermitian eigensolver did not converge");
  }
  const Eigen::VectorXd& evals = solver.eigenvalues();
  const Eigen::Index dim = h.dim();

  SpectralSummary summary;
  summary.e_min = evals(0);
  summary.e_max = evals(dim - 1);
  summary.gap = (dim > 1) ? evals(1) - evals(0) : 0.0;
  const double scale = std::max(1.0, h.matrix().cwiseAbs().maxCoeff());
  summary.degenerate = dim > 1 && summary.gap < 1e-10 * scale;

  Eigen::VectorXcd ground = solver.eigenvectors().col(0);
  ground.normalize();
  canonicalize_phase(ground);

  return GroundStateResult{summary.e_min, QuantumState(std::move(ground)),
                           summary};
}

double energy_expectation(const HermitianOperator& h, const QuantumState& psi) {
  if (h.dim() != psi.dim()) {
    throw argument_error("operator/state dimension mismatch: " +
                         std::to_string(h.dim()) + " vs " +
                         std::to_string(psi.dim()));
  }
  const std::complex<double> value =
      psi.amplitudes().dot(h.matrix() * psi.amplitudes());
  if (std::abs(value.imag()) > 1e-10) {
    throw integrity_error("expectation has imaginary residue " +
                          std::to_string(value.imag()));
  }
  return value.real();
}

}  // namespace qbat
