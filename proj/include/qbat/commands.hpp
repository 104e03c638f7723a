#pragma once

#include "qbat/config.hpp"
#include "qbat/validate.hpp"

namespace qbat {

/// Command entry points shared by the CLI binary and the test suites.
/// Each writes its files under config.out and returns the process exit code:
/// 0 success, 1 check/convergence failure, 2 usage/config error (the latter
/// is normally signalled by argument_error from the caller's mapping).

/// Writes trace.csv: tau,W_over_B,P_over_B2,curve_label.
int cmd_trace(const ExperimentConfig& config);

/// Writes grid.csv (axis1,axis2,tau,W_over_B) and meta.csv
/// (axis1,axis2,dt_used,converged,degenerate).
int cmd_sweep(const ExperimentConfig& config);

/// Writes wmax.csv: N,coupling,protocol,W_max_over_B,tau_at_max.
int cmd_wmax(const ExperimentConfig& config);

/// Runs the oracle panel and invariant suite, printing one line per check.
int cmd_validate(FaultInjection fault = FaultInjection::none);

}  // namespace qbat
