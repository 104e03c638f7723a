#include "qbat/oracle.hpp"

#include <cmath>
#include <string>

namespace qbat {

namespace {

using Complex = std::complex<double>;

}  // namespace

DensityMatrix::DensityMatrix(Eigen::MatrixXcd entries)
    : mat_(std::move(entries)) {
  if (mat_.rows() != mat_.cols() || mat_.rows() < 1) {
    throw argument_error("density matrix must be square");
  }
  const double scale = std::max(1.0, mat_.cwiseAbs().maxCoeff());
  if ((mat_ - mat_.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw integrity_error("density matrix is not Hermitian");
  }
  if (std::abs(mat_.trace() - Complex(1.0, 0.0)) > 1e-10) {
    throw integrity_error("density matrix trace is not 1");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(mat_,
                                                         Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw numeric_error("eigensolver failed on density matrix");
  }
  if (solver.eigenvalues()(0) < -1e-10) {
    throw integrity_error("density matrix has a negative eigenvalue: " +
                          std::to_string(solver.eigenvalues()(0)));
  }
}

DensityMatrix DensityMatrix::pure(const QuantumState& psi) {
  return DensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index dim) {
  return DensityMatrix(Eigen::MatrixXcd::Identity(dim, dim) /
                       static_cast<double>(dim));
}

double DensityMatrix::purity() const { return (mat_ * mat_).trace().real(); }

QuantumState brute_force_propagate(const ChainSpec& spec,
                                   const DriveProtocol& drive,
                                   const QuantumState& psi0, double tau_max,
                                   double dt_fine) {
  spec.validate();
  validate_drive(drive);
  if (!(tau_max > 0.0)) throw argument_error("tau_max must be > 0");
  if (!(dt_fine > 0.0) || dt_fine > 1e-4) {
    throw argument_error("oracle requires 0 < dt_fine <= 1e-4");
  }
  if (psi0.dim() != static_cast<Eigen::Index>(spec.dim())) {
    throw argument_error("initial state dimension does not match spec");
  }

  Eigen::MatrixXcd hc = build_battery_hamiltonian(spec).matrix();
  const Eigen::VectorXcd base_diag = hc.diagonal();
  const Eigen::VectorXcd d = total_sz_diagonal(spec.n_spins).cast<Complex>();
  // Row-sum bound on |H_c|; the drive only ever adds |h| * n_spins to it.
  const double h0_bound = hc.cwiseAbs().rowwise().sum().maxCoeff();

  const long n_steps = std::lround(tau_max / dt_fine);
  const double dt = tau_max / static_cast<double>(n_steps);

  Eigen::VectorXcd psi = psi0.amplitudes();
  Eigen::VectorXcd term(psi.size()), sum(psi.size()), prod(psi.size());
  for (long k = 0; k < n_steps; ++k) {
    const double h = drive_field(drive, static_cast<double>(k) * dt);
    hc.diagonal() = base_diag + h * d;
    const double bound = h0_bound + std::abs(h) * spec.n_spins;
    const int substeps =
        std::max(1, static_cast<int>(std::ceil(dt * bound / 2.0)));
    const double step = dt / substeps;
    const int min_terms = static_cast<int>(step * bound) + 1;
    for (int s = 0; s < substeps; ++s) {
      term = psi;
      sum = psi;
      for (int m = 1;; ++m) {
        prod.noalias() = hc * term;
        term = (Complex(0.0, -step) / static_cast<double>(m)) * prod;
        sum += term;
        if (m >= min_terms && term.norm() <= 1e-16 * sum.norm()) break;
        if (m >= 120) {
          throw numeric_error("oracle exponential did not terminate");
        }
      }
      psi = sum;
    }
  }
  return QuantumState(std::move(psi));
}

DensityMatrix density_matrix_propagate(const ChainSpec& spec,
                                       const DriveProtocol& drive,
                                       const DensityMatrix& rho0,
                                       double tau_max,
                                       const PropagationSettings& settings) {
  spec.validate();
  validate_drive(drive);
  settings.validate();
  if (!(tau_max > 0.0)) throw argument_error("tau_max must be > 0");
  if (rho0.dim() != static_cast<Eigen::Index>(spec.dim())) {
    throw argument_error("density matrix dimension does not match spec");
  }

  const Eigen::MatrixXcd h0 = build_battery_hamiltonian(spec).matrix();
  const Eigen::VectorXcd base_diag = h0.diagonal();
  const Eigen::VectorXcd d = total_sz_diagonal(spec.n_spins).cast<Complex>();

  const auto run = [&](double dt_nom) {
    const long n_steps =
        std::max(1L, static_cast<long>(std::ceil(tau_max / dt_nom - 1e-12)));
    const double dt = tau_max / static_cast<double>(n_steps);
    Eigen::MatrixXcd rho = rho0.matrix();
    Eigen::MatrixXcd hc = h0;
    for (long k = 0; k < n_steps; ++k) {
      const double t_mid = (static_cast<double>(k) + 0.5) * dt;
      hc.diagonal() = base_diag + drive_field(drive, t_mid) * d;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hc);
      if (es.info() != Eigen::Success) {
        throw numeric_error("step eigensolver failed");
      }
      const Eigen::VectorXcd phases =
          (Complex(0.0, -dt) * es.eigenvalues().cast<Complex>()).array().exp();
      const Eigen::MatrixXcd u =
          es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
      rho = u * rho * u.adjoint();
    }
    return rho;
  };

  double dt_nom = settings.dt_initial;
  Eigen::MatrixXcd prev = run(dt_nom);
  for (int level = 0; level < settings.max_halvings; ++level) {
    dt_nom *= 0.5;
    Eigen::MatrixXcd cur = run(dt_nom);
    const double deviation = (cur - prev).norm() / std::sqrt(2.0);
    if (deviation < settings.rel_tol) {
      return DensityMatrix(std::move(cur));
    }
    prev = std::move(cur);
  }
  throw numeric_error("density propagation did not converge");
}

}  // namespace qbat
