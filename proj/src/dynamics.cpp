#include "qbat/dynamics.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace qbat {

double drive_field(const DriveProtocol& drive, double tau) {
  return std::visit(
      [&](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, NoDrive>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, LinearDrive>) {
          return d.v * tau;
        } else {
          return d.v * std::sin(d.omega * tau);
        }
      },
      drive);
}

void validate_drive(const DriveProtocol& drive) {
  std::visit(
      [](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (!std::is_same_v<T, NoDrive>) {
          if (!(d.v >= 0.0) || !std::isfinite(d.v)) {
            throw argument_error("drive amplitude v must be >= 0");
          }
        }
        if constexpr (std::is_same_v<T, SinusoidalDrive>) {
          if (!(d.omega > 0.0) || !std::isfinite(d.omega)) {
            throw argument_error("drive frequency omega must be > 0");
          }
        }
      },
      drive);
}

void PropagationSettings::validate() const {
  if (!(dt_initial > 0.0)) throw argument_error("dt_initial must be > 0");
  if (!(rel_tol > 0.0)) throw argument_error("rel_tol must be > 0");
  if (max_halvings < 0) throw argument_error("max_halvings must be >= 0");
}

HermitianOperator charging_hamiltonian(const ChainSpec& spec,
                                       const DriveProtocol& drive, double tau) {
  if (!(tau >= 0.0)) throw argument_error("tau must be >= 0");
  validate_drive(drive);
  const double h = drive_field(drive, tau);
  Eigen::MatrixXcd m = build_battery_hamiltonian(spec).matrix();
  m.diagonal() += (h * total_sz_diagonal(spec.n_spins)).cast<std::complex<double>>();
  return HermitianOperator(std::move(m));
}

namespace {

using Complex = std::complex<double>;

// Applies exp(-i dt (H0 + c D)) to a state by truncated Taylor series,
// splitting the step so each sub-argument stays below kTheta in spectral
// norm. Truncation at 1e-14 keeps each exponential well inside the 1e-12
// accuracy contract.
class StepExponential {
 public:
  StepExponential(const Eigen::MatrixXcd& h0, Eigen::VectorXcd d_diag,
                  double h0_norm, double d_max)
      : h0_(h0),
        d_(std::move(d_diag)),
        h0_norm_(h0_norm),
        d_max_(d_max),
        term_(h0.rows()),
        tmp_(h0.rows()),
        acc_(h0.rows()) {}

  void apply(double c, double dt, Eigen::VectorXcd& psi) {
    constexpr double kTheta = 3.0;
    constexpr int kMaxTerms = 80;
    const double bound = h0_norm_ + std::abs(c) * d_max_;
    const int substeps =
        std::max(1, static_cast<int>(std::ceil(dt * bound / kTheta)));
    const double h = dt / substeps;
    const double z = h * bound;
    const int min_terms = static_cast<int>(z) + 1;
    for (int s = 0; s < substeps; ++s) {
      term_ = psi;
      acc_ = psi;
      for (int k = 1;; ++k) {
        tmp_.noalias() = h0_ * term_;
        tmp_.array() += c * (d_.array() * term_.array());
        term_ = (Complex(0.0, -h) / static_cast<double>(k)) * tmp_;
        acc_ += term_;
        if (k >= min_terms &&
            term_.squaredNorm() <= 1e-28 * acc_.squaredNorm()) {
          break;
        }
        if (k >= kMaxTerms) {
          throw numeric_error("step exponential series did not terminate");
        }
      }
      psi = acc_;
    }
  }

 private:
  const Eigen::MatrixXcd& h0_;
  Eigen::VectorXcd d_;
  double h0_norm_;
  double d_max_;
  Eigen::VectorXcd term_, tmp_, acc_;
};

}  // namespace

Trajectory propagate(const ChainSpec& spec, const DriveProtocol& drive,
                     const QuantumState& psi0, double tau_max, int n_samples,
                     const PropagationSettings& settings) {
  spec.validate();
  validate_drive(drive);
  settings.validate();
  if (!(tau_max > 0.0)) throw argument_error("tau_max must be > 0");
  if (n_samples < 2) throw argument_error("n_samples must be >= 2");
  if (psi0.dim() != static_cast<Eigen::Index>(spec.dim())) {
    throw argument_error("initial state dimension does not match spec");
  }

  const Eigen::MatrixXcd h0 = build_battery_hamiltonian(spec).matrix();
  const Eigen::VectorXd d_real = total_sz_diagonal(spec.n_spins);
  const Eigen::VectorXcd d_cplx = d_real.cast<Complex>();

  // Exact spectral norm of H0; the drive adds at most |h| * n_spins.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h0,
                                                         Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw numeric_error("eigensolver failed while bounding the generator");
  }
  const double h0_norm = std::max(std::abs(solver.eigenvalues()(0)),
                                  std::abs(solver.eigenvalues()(h0.rows() - 1)));
  const double d_max = static_cast<double>(spec.n_spins);

  std::vector<double> taus(n_samples);
  for (int k = 0; k < n_samples; ++k) {
    taus[k] = tau_max * static_cast<double>(k) /
              static_cast<double>(n_samples - 1);
  }

  StepExponential stepper(h0, d_cplx, h0_norm, d_max);

  // One full run at nominal step width dt_nom; each sample interval is
  // covered by ceil(width/dt_nom) equal steps so samples land exactly.
  const auto run = [&](double dt_nom) {
    std::vector<Eigen::VectorXcd> samples;
    samples.reserve(n_samples);
    Eigen::VectorXcd psi = psi0.amplitudes();
    samples.push_back(psi);
    for (int k = 1; k < n_samples; ++k) {
      const double t0 = taus[k - 1];
      const double width = taus[k] - t0;
      const int n_sub = std::max(
          1, static_cast<int>(std::ceil(width / dt_nom - 1e-12)));
      const double h = width / n_sub;
      for (int s = 0; s < n_sub; ++s) {
        const double t_mid = t0 + (s + 0.5) * h;
        stepper.apply(drive_field(drive, t_mid), h, psi);
      }
      samples.push_back(psi);
    }
    return samples;
  };

  const auto finish = [&](std::vector<Eigen::VectorXcd>&& samples,
                          double dt_nom, bool converged) {
    Trajectory traj;
    traj.taus = taus;
    traj.states.reserve(samples.size());
    for (auto& s : samples) traj.states.emplace_back(std::move(s));
    traj.spec = spec;
    traj.drive = drive;
    const double width = taus[1] - taus[0];
    const int n_sub =
        std::max(1, static_cast<int>(std::ceil(width / dt_nom - 1e-12)));
    traj.dt_used = width / n_sub;
    traj.converged = converged;
    return traj;
  };

  double dt_nom = settings.dt_initial;
  std::vector<Eigen::VectorXcd> prev = run(dt_nom);
  for (int level = 0; level < settings.max_halvings; ++level) {
    dt_nom *= 0.5;
    std::vector<Eigen::VectorXcd> cur = run(dt_nom);
    const double deviation = (cur.back() - prev.back()).norm();
    if (deviation < settings.rel_tol) {
      return finish(std::move(cur), dt_nom, true);
    }
    prev = std::move(cur);
  }
  return finish(std::move(prev), dt_nom, false);
}

}  // namespace qbat
