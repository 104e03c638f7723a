#include "qbat/energetics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qbat {

std::vector<double> work_samples_over_b(const Trajectory& traj,
                                        const HermitianOperator& h0,
                                        double e0) {
  if (traj.states.empty()) throw argument_error("empty trajectory");
  if (h0.dim() != traj.states.front().dim()) {
    throw argument_error("operator/trajectory dimension mismatch");
  }
  const double b = traj.spec.field_b;
  std::vector<double> work(traj.states.size());
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    work[k] = (energy_expectation(h0, traj.states[k]) - e0) / b;
  }
  return work;
}

ChargingTrace work_and_power(const Trajectory& traj,
                             const HermitianOperator& h0, double e0) {
  if (!traj.converged) {
    throw integrity_error(
        "work_and_power requires a converged trajectory; rerun with a larger "
        "rel_tol or more halvings");
  }
  std::vector<double> work = work_samples_over_b(traj, h0, e0);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h0.matrix(),
                                                         Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw numeric_error("eigensolver failed on H0");
  }
  const double span = (solver.eigenvalues()(h0.dim() - 1) -
                       solver.eigenvalues()(0)) /
                      traj.spec.field_b;

  ChargingTrace trace;
  trace.taus = traj.taus;
  trace.spec = traj.spec;
  trace.drive = traj.drive;
  trace.work = std::move(work);
  trace.power.resize(trace.work.size());
  for (std::size_t k = 0; k < trace.work.size(); ++k) {
    double& w = trace.work[k];
    if (w < -1e-8) {
      throw integrity_error("negative work " + std::to_string(w) +
                            " at tau=" + std::to_string(trace.taus[k]) +
                            "; initial state was not the ground state");
    }
    w = std::max(w, 0.0);
    if (w > span + 1e-6) {
      throw integrity_error("work exceeds the spectral bound at tau=" +
                            std::to_string(trace.taus[k]));
    }
    trace.power[k] = (trace.taus[k] > 0.0) ? w / trace.taus[k] : 0.0;
  }
  return trace;
}

WMaxRecord max_work_scan(const ChainSpec& spec, const DriveProtocol& drive,
                         double tau_max, const PropagationSettings& settings,
                         int n_samples) {
  if (!(tau_max > 0.0)) throw argument_error("tau_max must be > 0");
  if (n_samples < 2) throw argument_error("n_samples must be >= 2");

  const HermitianOperator h0 = build_battery_hamiltonian(spec);
  const GroundStateResult gs = ground_state(h0);
  const Trajectory traj =
      propagate(spec, drive, gs.state, tau_max, n_samples, settings);
  if (!traj.converged) {
    throw numeric_error("propagation did not converge within max_halvings");
  }
  const ChargingTrace trace = work_and_power(traj, h0, gs.energy);

  const auto it = std::max_element(trace.work.begin(), trace.work.end());
  WMaxRecord rec;
  rec.w_max = *it;
  rec.tau_at_max = trace.taus[static_cast<std::size_t>(
      std::distance(trace.work.begin(), it))];
  rec.tau_window = tau_max;
  rec.spec = spec;
  rec.drive = drive;
  rec.dt_used = traj.dt_used;
  rec.converged = traj.converged;
  rec.degenerate_ground = gs.summary.degenerate;
  return rec;
}

}  // namespace qbat
