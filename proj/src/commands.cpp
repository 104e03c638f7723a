#include "qbat/commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

#include "qbat/csv.hpp"
#include "qbat/sweep.hpp"
#include "qbat/version.hpp"

namespace qbat {

namespace {

ChainSpec chain_from(const ExperimentConfig& c, const std::string& coupling) {
  if (!(c.b > 0.0)) {
    throw argument_error("reported units are W/B and P/B^2; b must be > 0");
  }
  ChainSpec spec;
  spec.n_spins = c.n_spins;
  spec.field_b = c.b;
  spec.g = c.g;
  spec.gamma = c.gamma;
  if (coupling == "nn") {
    spec.coupling = NearestNeighbor{};
  } else if (coupling == "lr") {
    spec.coupling = LongRange{c.lr_exponent};
  } else {
    throw argument_error("command requires coupling=nn or coupling=lr");
  }
  spec.validate();
  return spec;
}

DriveProtocol drive_from(const ExperimentConfig& c) {
  DriveProtocol drive;
  if (c.drive == "linear") {
    drive = LinearDrive{c.v};
  } else if (c.drive == "sin") {
    drive = SinusoidalDrive{c.v, c.omega};
  } else {
    drive = NoDrive{};
  }
  validate_drive(drive);
  return drive;
}

PropagationSettings settings_from(const ExperimentConfig& c) {
  PropagationSettings s;
  s.dt_initial = c.dt_initial;
  s.rel_tol = c.rel_tol;
  s.max_halvings = c.max_halvings;
  s.validate();
  return s;
}

std::ofstream open_output(const ExperimentConfig& c, const std::string& name,
                          const std::string& command) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(c.out, ec);
  const fs::path path = fs::path(c.out) / name;
  std::ofstream out(path, std::ios::binary);  // \n endings on all platforms
  if (!out) {
    throw numeric_error("cannot open output file '" + path.string() + "'");
  }
  out << "# qbat " << kVersion << " | command=" << command << " | "
      << resolved_string(c) << "\n";
  return out;
}

}  // namespace

int cmd_trace(const ExperimentConfig& c) {
  const DriveProtocol base_drive = drive_from(c);
  const PropagationSettings settings = settings_from(c);

  struct Curve {
    std::string label;
    ChainSpec spec;
    DriveProtocol drive;
  };
  std::vector<Curve> curves;
  if (c.curve_param == "none") {
    curves.push_back({"base", chain_from(c, c.coupling), base_drive});
  } else {
    if (c.curve_values.empty()) {
      throw argument_error("curve_param set but curve_values is empty");
    }
    for (double value : c.curve_values) {
      Curve curve;
      curve.label = c.curve_param + "=" + format_short(value);
      ExperimentConfig cc = c;
      if (c.curve_param == "g") {
        cc.g = value;
      } else if (c.curve_param == "gamma") {
        cc.gamma = value;
      } else {
        cc.v = value;
      }
      curve.spec = chain_from(cc, cc.coupling);
      curve.drive = drive_from(cc);
      curves.push_back(std::move(curve));
    }
  }

  std::vector<ChargingTrace> traces(curves.size());
  std::vector<std::string> failures;
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const HermitianOperator h0 = build_battery_hamiltonian(curves[i].spec);
    const GroundStateResult gs = ground_state(h0);
    const Trajectory traj = propagate(curves[i].spec, curves[i].drive, gs.state,
                                      c.tau_max, c.n_samples, settings);
    if (!traj.converged) {
      failures.push_back(curves[i].label);
      continue;
    }
    traces[i] = work_and_power(traj, h0, gs.energy);
  }

  std::ofstream out = open_output(c, "trace.csv", "trace");
  out << "tau,W_over_B,P_over_B2,curve_label\n";
  for (std::size_t i = 0; i < curves.size(); ++i) {
    if (traces[i].taus.empty()) continue;
    const ChargingTrace& t = traces[i];
    for (std::size_t k = 0; k < t.taus.size(); ++k) {
      out << format_sig(t.taus[k]) << "," << format_sig(t.work[k]) << ","
          << format_sig(t.power[k] / c.b) << "," << curves[i].label << "\n";
    }
  }
  out.close();

  if (!failures.empty()) {
    for (const std::string& label : failures) {
      std::cerr << "trace: propagation did not converge for curve " << label
                << "\n";
    }
    return 1;
  }
  return 0;
}

namespace {

// Single-axis grids put the swept value in axis1 and leave axis2 blank;
// multi-N anisotropy grids put N in axis1 and gamma in axis2.
void write_grid_rows(std::ofstream& grid, std::ofstream& meta,
                     const GridResult& g, const std::string& axis1_override) {
  for (std::size_t i = 0; i < g.axis1.size(); ++i) {
    const std::string a1 =
        axis1_override.empty() ? format_sig(g.axis1[i]) : axis1_override;
    const std::string a2 =
        axis1_override.empty() ? "" : format_sig(g.axis1[i]);
    for (std::size_t k = 0; k < g.taus.size(); ++k) {
      grid << a1 << "," << a2 << "," << format_sig(g.taus[k]) << ","
           << format_sig(g.values[i][k]) << "\n";
    }
    meta << a1 << "," << a2 << "," << format_sig(g.meta[i].dt_used) << ","
         << (g.meta[i].converged ? 1 : 0) << ","
         << (g.meta[i].degenerate ? 1 : 0) << "\n";
  }
}

}  // namespace

int cmd_sweep(const ExperimentConfig& c) {
  if (c.axis1.empty()) {
    throw argument_error("sweep requires an axis1 key (g, v, gamma, n_spins)");
  }
  if (c.axis1_values.empty()) {
    throw argument_error("axis1_values (or axis1_range) is empty");
  }
  const PropagationSettings settings = settings_from(c);

  std::vector<GridResult> grids;
  std::vector<std::string> grid_labels;  // axis1 value as text for multi-N
  if (c.axis1 == "n_spins") {
    if (c.axis2 != "gamma" || c.axis2_values.empty()) {
      throw argument_error(
          "axis1=n_spins requires axis2=gamma with axis2_values");
    }
    std::vector<int> n_values;
    for (double x : c.axis1_values) {
      n_values.push_back(static_cast<int>(x));
    }
    ExperimentConfig cc = c;
    cc.n_spins = n_values.front();
    grids = sweep_anisotropy(n_values, c.axis2_values, chain_from(cc, c.coupling),
                             drive_from(c), c.tau_max, settings, c.n_samples,
                             c.threads);
    for (int n : n_values) grid_labels.push_back(std::to_string(n));
  } else if (!c.axis2.empty()) {
    throw argument_error("axis2 is only supported with axis1=n_spins");
  } else if (c.axis1 == "g") {
    grids.push_back(sweep_coupling(chain_from(c, c.coupling), c.axis1_values,
                                   drive_from(c), c.tau_max, settings,
                                   c.n_samples, c.threads));
    grid_labels.emplace_back();
  } else if (c.axis1 == "v") {
    grids.push_back(sweep_drive(chain_from(c, c.coupling), c.axis1_values,
                                c.tau_max, settings, c.n_samples, c.threads));
    grid_labels.emplace_back();
  } else {  // gamma
    ExperimentConfig cc = c;
    cc.gamma = c.axis1_values.front();
    auto multi = sweep_anisotropy({c.n_spins}, c.axis1_values,
                                  chain_from(cc, c.coupling), drive_from(c),
                                  c.tau_max, settings, c.n_samples, c.threads);
    grids.push_back(std::move(multi.front()));
    grid_labels.emplace_back();
  }

  std::ofstream grid_out = open_output(c, "grid.csv", "sweep");
  std::ofstream meta_out = open_output(c, "meta.csv", "sweep");
  grid_out << "axis1,axis2,tau,W_over_B\n";
  meta_out << "axis1,axis2,dt_used,converged,degenerate\n";
  for (std::size_t gi = 0; gi < grids.size(); ++gi) {
    write_grid_rows(grid_out, meta_out, grids[gi], grid_labels[gi]);
  }
  grid_out.close();
  meta_out.close();

  int unconverged = 0;
  for (const auto& g : grids) {
    for (const auto& m : g.meta) {
      if (!m.converged) ++unconverged;
    }
  }
  if (unconverged > 0) {
    std::cerr << "sweep: " << unconverged
              << " cell(s) did not converge (flagged in meta.csv)\n";
    return 1;
  }
  return 0;
}

int cmd_wmax(const ExperimentConfig& c) {
  if (c.n_values.empty()) {
    throw argument_error("wmax requires n_values");
  }
  const PropagationSettings settings = settings_from(c);

  ExperimentConfig cc = c;
  cc.n_spins = c.n_values.front();
  const std::string base_coupling = (c.coupling == "nn") ? "nn" : "lr";
  const ChainSpec base = chain_from(cc, base_coupling);
  const LinearDrive linear{c.v};
  const SinusoidalDrive periodic{c.v, c.omega};

  const bool include_nn = c.coupling != "lr";
  const bool include_lr = c.coupling != "nn";
  const std::vector<ProtocolComparison> rows = compare_protocols_filtered(
      c.n_values, base, linear, periodic, c.tau_max, settings, c.n_samples,
      c.threads, include_nn, include_lr);

  std::ofstream out = open_output(c, "wmax.csv", "wmax");
  out << "N,coupling,protocol,W_max_over_B,tau_at_max\n";
  for (const ProtocolComparison& row : rows) {
    const std::string scheme = row.long_range ? "lr" : "nn";
    if (c.coupling != "both" && scheme != c.coupling) continue;
    out << row.n_spins << "," << scheme << ",linear,"
        << format_sig(row.linear.w_max) << ","
        << format_sig(row.linear.tau_at_max) << "\n";
    out << row.n_spins << "," << scheme << ",periodic,"
        << format_sig(row.periodic.w_max) << ","
        << format_sig(row.periodic.tau_at_max) << "\n";
  }
  out.close();
  return 0;
}

int cmd_validate(FaultInjection fault) {
  const std::vector<CheckResult> checks = run_validation_panel(fault);
  bool all_passed = true;
  for (const CheckResult& check : checks) {
    std::cout << (check.passed ? "PASS " : "FAIL ") << check.name;
    if (!check.detail.empty()) std::cout << " (" << check.detail << ")";
    std::cout << "\n";
    all_passed = all_passed && check.passed;
  }
  std::cout << (all_passed ? "all checks passed" : "some checks FAILED")
            << "\n";
  return all_passed ? 0 : 1;
}

}  // namespace qbat
