#include "qbat/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>

namespace qbat {

double GridResult::grid_max() const {
  double m = 0.0;
  for (const auto& row : values) {
    for (double w : row) m = std::max(m, w);
  }
  return m;
}

void run_indexed(std::size_t count, int threads,
                 const std::function<void(std::size_t)>& fn) {
  if (count == 0) return;
  unsigned n_workers = threads > 0
                           ? static_cast<unsigned>(threads)
                           : std::max(1u, std::thread::hardware_concurrency());
  n_workers = std::min<unsigned>(n_workers, count);

  if (n_workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(n_workers);
  for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

namespace {

void check_axis(const std::vector<double>& values, const char* name) {
  if (values.empty()) {
    throw argument_error(std::string(name) + " value list is empty");
  }
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(values[i] > values[i - 1])) {
      throw argument_error(std::string(name) +
                           " values must be strictly increasing");
    }
  }
}

// One grid cell: ground state -> propagate -> work samples. Non-converged
// propagations are recorded and flagged rather than aborting the sweep.
void run_cell(const ChainSpec& spec, const DriveProtocol& drive, double tau_max,
              const PropagationSettings& settings, int n_samples,
              std::vector<double>& out_values, CellMeta& out_meta) {
  const HermitianOperator h0 = build_battery_hamiltonian(spec);
  const GroundStateResult gs = ground_state(h0);
  const Trajectory traj =
      propagate(spec, drive, gs.state, tau_max, n_samples, settings);
  out_values = work_samples_over_b(traj, h0, gs.energy);
  for (double& w : out_values) w = std::max(w, 0.0);
  out_meta = CellMeta{traj.dt_used, traj.converged, gs.summary.degenerate};
}

std::vector<double> sample_times(double tau_max, int n_samples) {
  std::vector<double> taus(n_samples);
  for (int k = 0; k < n_samples; ++k) {
    taus[k] =
        tau_max * static_cast<double>(k) / static_cast<double>(n_samples - 1);
  }
  return taus;
}

}  // namespace

GridResult sweep_coupling(const ChainSpec& base,
                          const std::vector<double>& g_values,
                          const DriveProtocol& drive, double tau_max,
                          const PropagationSettings& settings, int n_samples,
                          int threads) {
  check_axis(g_values, "g");
  GridResult grid;
  grid.axis1_name = "g";
  grid.axis1 = g_values;
  grid.taus = sample_times(tau_max, n_samples);
  grid.values.resize(g_values.size());
  grid.meta.resize(g_values.size());
  grid.base = base;
  grid.drive = drive;
  run_indexed(g_values.size(), threads, [&](std::size_t i) {
    ChainSpec spec = base;
    spec.g = g_values[i];
    run_cell(spec, drive, tau_max, settings, n_samples, grid.values[i],
             grid.meta[i]);
  });
  return grid;
}

GridResult sweep_drive(const ChainSpec& base,
                       const std::vector<double>& v_values, double tau_max,
                       const PropagationSettings& settings, int n_samples,
                       int threads) {
  check_axis(v_values, "v");
  GridResult grid;
  grid.axis1_name = "v";
  grid.axis1 = v_values;
  grid.taus = sample_times(tau_max, n_samples);
  grid.values.resize(v_values.size());
  grid.meta.resize(v_values.size());
  grid.base = base;
  grid.drive = LinearDrive{0.0};
  run_indexed(v_values.size(), threads, [&](std::size_t i) {
    run_cell(base, LinearDrive{v_values[i]}, tau_max, settings, n_samples,
             grid.values[i], grid.meta[i]);
  });
  return grid;
}

std::vector<GridResult> sweep_anisotropy(const std::vector<int>& n_values,
                                         const std::vector<double>& gamma_values,
                                         const ChainSpec& base,
                                         const DriveProtocol& drive,
                                         double tau_max,
                                         const PropagationSettings& settings,
                                         int n_samples, int threads) {
  if (n_values.empty()) throw argument_error("n_spins list is empty");
  check_axis(gamma_values, "gamma");

  std::vector<GridResult> grids(n_values.size());
  for (std::size_t gi = 0; gi < n_values.size(); ++gi) {
    GridResult& grid = grids[gi];
    grid.axis1_name = "gamma";
    grid.axis1 = gamma_values;
    grid.taus = sample_times(tau_max, n_samples);
    grid.values.resize(gamma_values.size());
    grid.meta.resize(gamma_values.size());
    grid.base = base;
    grid.base.n_spins = n_values[gi];
    grid.drive = drive;
  }
  // Flatten (N, gamma) cells into one parallel batch.
  const std::size_t per = gamma_values.size();
  run_indexed(n_values.size() * per, threads, [&](std::size_t idx) {
    const std::size_t gi = idx / per;
    const std::size_t ci = idx % per;
    ChainSpec spec = grids[gi].base;
    spec.gamma = gamma_values[ci];
    run_cell(spec, grids[gi].drive, tau_max, settings, n_samples,
             grids[gi].values[ci], grids[gi].meta[ci]);
  });
  return grids;
}

std::vector<ProtocolComparison> compare_protocols_filtered(
    const std::vector<int>& n_values, const ChainSpec& base,
    const LinearDrive& linear, const SinusoidalDrive& periodic, double tau_max,
    const PropagationSettings& settings, int n_samples, int threads,
    bool include_nn, bool include_lr) {
  if (n_values.empty()) throw argument_error("n_spins list is empty");
  if (!include_nn && !include_lr) {
    throw argument_error("no coupling scheme selected");
  }

  const double lr_exponent = std::holds_alternative<LongRange>(base.coupling)
                                 ? std::get<LongRange>(base.coupling).exponent
                                 : 1.0;
  std::vector<CouplingScheme> schemes;
  if (include_nn) schemes.emplace_back(NearestNeighbor{});
  if (include_lr) schemes.emplace_back(LongRange{lr_exponent});

  std::vector<ProtocolComparison> rows(n_values.size() * schemes.size());
  // Cells ordered (N, scheme, protocol); each W_max scan is independent.
  run_indexed(rows.size() * 2, threads, [&](std::size_t idx) {
    const std::size_t row = idx / 2;
    const bool is_periodic = (idx % 2) != 0;
    ChainSpec spec = base;
    spec.n_spins = n_values[row / schemes.size()];
    spec.coupling = schemes[row % schemes.size()];
    const DriveProtocol drive =
        is_periodic ? DriveProtocol{periodic} : DriveProtocol{linear};
    WMaxRecord rec = max_work_scan(spec, drive, tau_max, settings, n_samples);
    ProtocolComparison& out = rows[row];
    out.n_spins = spec.n_spins;
    out.long_range = std::holds_alternative<LongRange>(spec.coupling);
    (is_periodic ? out.periodic : out.linear) = std::move(rec);
  });
  return rows;
}

std::vector<ProtocolComparison> compare_protocols(
    const std::vector<int>& n_values, const ChainSpec& base,
    const LinearDrive& linear, const SinusoidalDrive& periodic, double tau_max,
    const PropagationSettings& settings, int n_samples, int threads) {
  return compare_protocols_filtered(n_values, base, linear, periodic, tau_max,
                                    settings, n_samples, threads, true, true);
}

}  // namespace qbat
