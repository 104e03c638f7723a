#pragma once

#include <cstddef>
#include <functional>
#include <string>

#include "qbat/energetics.hpp"

namespace qbat {

struct CellMeta {
  double dt_used = 0.0;
  bool converged = false;
  bool degenerate = false;
};

/// W/B over (swept parameter) x (charging time). values[i][k] is the work at
/// axis1[i], tau = taus[k]; meta[i] records per-cell integration facts.
struct GridResult {
  std::string axis1_name;
  std::vector<double> axis1;
  std::vector<double> taus;
  std::vector<std::vector<double>> values;
  std::vector<CellMeta> meta;
  ChainSpec base;
  DriveProtocol drive;

  double grid_max() const;
};

/// Fig. 2 family: W(tau, g) for the base coupling scheme.
GridResult sweep_coupling(const ChainSpec& base,
                          const std::vector<double>& g_values,
                          const DriveProtocol& drive, double tau_max,
                          const PropagationSettings& settings,
                          int n_samples = 400, int threads = 0);

/// Fig. 4 family: W(tau, v) under linear driving.
GridResult sweep_drive(const ChainSpec& base, const std::vector<double>& v_values,
                       double tau_max, const PropagationSettings& settings,
                       int n_samples = 400, int threads = 0);

/// Fig. 6 family: one W(tau, gamma) grid per chain length.
std::vector<GridResult> sweep_anisotropy(
    const std::vector<int>& n_values, const std::vector<double>& gamma_values,
    const ChainSpec& base, const DriveProtocol& drive, double tau_max,
    const PropagationSettings& settings, int n_samples = 400, int threads = 0);

/// Figs. 7-9 family: W_max per (N, coupling scheme, protocol).
struct ProtocolComparison {
  int n_spins = 0;
  bool long_range = false;
  WMaxRecord linear;
  WMaxRecord periodic;
};

std::vector<ProtocolComparison> compare_protocols(
    const std::vector<int>& n_values, const ChainSpec& base,
    const LinearDrive& linear, const SinusoidalDrive& periodic, double tau_max,
    const PropagationSettings& settings, int n_samples = 2001, int threads = 0);

/// Same comparison restricted to a subset of coupling schemes, so callers
/// that emit a single panel do not pay for rows they drop.
std::vector<ProtocolComparison> compare_protocols_filtered(
    const std::vector<int>& n_values, const ChainSpec& base,
    const LinearDrive& linear, const SinusoidalDrive& periodic, double tau_max,
    const PropagationSettings& settings, int n_samples, int threads,
    bool include_nn, bool include_lr);

/// Runs fn(0..count-1) on up to `threads` workers (0 = hardware concurrency).
/// Results must be written to per-index slots; the first exception thrown by
/// any cell is rethrown after all workers finish.
void run_indexed(std::size_t count, int threads,
                 const std::function<void(std::size_t)>& fn);

}  // namespace qbat
