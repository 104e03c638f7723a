#pragma once

#include "qbat/dynamics.hpp"

namespace qbat {

/// Sampled work and average-power curves for one parameter point.
/// `work` is W/B and `power` follows the convention power[k] = work[k]/taus[k]
/// with power[0] = 0.
struct ChargingTrace {
  std::vector<double> taus;
  std::vector<double> work;
  std::vector<double> power;
  ChainSpec spec;
  DriveProtocol drive;
};

struct WMaxRecord {
  double w_max = 0.0;       // W/B, maximum over the sampled window
  double tau_at_max = 0.0;  // first sample attaining the maximum
  double tau_window = 0.0;  // scan window [0, tau_window]
  ChainSpec spec;
  DriveProtocol drive;
  double dt_used = 0.0;
  bool converged = false;
  bool degenerate_ground = false;
};

/// Work samples (W/B) for any trajectory, converged or not. Used directly by
/// sweeps so that non-converged cells can still be recorded and flagged.
std::vector<double> work_samples_over_b(const Trajectory& traj,
                                        const HermitianOperator& h0, double e0);

/// W(tau) = <psi(tau)|H0|psi(tau)> - e0 and P(tau) = W(tau)/tau from a
/// converged trajectory started in the ground state (energy e0).
/// Work below -1e-8 is an integrity error; tiny negative noise is clamped.
ChargingTrace work_and_power(const Trajectory& traj, const HermitianOperator& h0,
                             double e0);

/// Ground state -> propagate -> work; returns the grid maximum over
/// [0, tau_max] sampled at n_samples points (>= 2000 for scan fidelity).
WMaxRecord max_work_scan(const ChainSpec& spec, const DriveProtocol& drive,
                         double tau_max, const PropagationSettings& settings,
                         int n_samples = 2001);

}  // namespace qbat
