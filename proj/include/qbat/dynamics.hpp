#pragma once

#include <variant>
#include <vector>

#include "qbat/spectrum.hpp"

namespace qbat {

struct NoDrive {};

struct LinearDrive {
  double v = 0.0;  // h(tau) = v * tau
};

struct SinusoidalDrive {
  double v = 0.0;      // amplitude
  double omega = 1.0;  // h(tau) = v * sin(omega * tau)
};

using DriveProtocol = std::variant<NoDrive, LinearDrive, SinusoidalDrive>;

/// Instantaneous charging field h(tau).
double drive_field(const DriveProtocol& drive, double tau);

/// Throws argument_error unless v >= 0 (and omega > 0 for sinusoidal drives).
void validate_drive(const DriveProtocol& drive);

struct PropagationSettings {
  double dt_initial = 1e-3;  // nominal step width, units of 1/B
  double rel_tol = 1e-8;     // accepted final-state deviation between refinements
  int max_halvings = 12;

  void validate() const;
};

struct Trajectory {
  std::vector<double> taus;          // strictly increasing, taus[0] = 0
  std::vector<QuantumState> states;  // aligned with taus
  ChainSpec spec;
  DriveProtocol drive;
  double dt_used = 0.0;
  bool converged = false;
};

/// H_c(tau) = H0 + h(tau) * D.
HermitianOperator charging_hamiltonian(const ChainSpec& spec,
                                       const DriveProtocol& drive, double tau);

/// Propagates psi0 under H_c(tau) on a uniform sample grid over [0, tau_max].
///
/// Scheme: second-order midpoint exponential; each step of width dt applies
/// exp(-i dt H_c(t + dt/2)), evaluated to better than 1e-12 by a scaled
/// Taylor expansion acting on the state. The whole run is repeated with the
/// step width halved until the final states of two consecutive refinements
/// agree within settings.rel_tol; `converged` reports whether that happened
/// within settings.max_halvings.
Trajectory propagate(const ChainSpec& spec, const DriveProtocol& drive,
                     const QuantumState& psi0, double tau_max, int n_samples,
                     const PropagationSettings& settings = {});

}  // namespace qbat
