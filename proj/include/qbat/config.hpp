#pragma once

#include <string>
#include <vector>

#include "qbat/errors.hpp"

namespace qbat {

/// Flat key=value experiment configuration. Defaults here, then an optional
/// preset, then an optional config file, then command-line flags; later
/// layers override earlier ones. Unknown keys are rejected with the source
/// location.
///
/// Grammar (one `key=value` per line, `#` starts a comment):
///   n_spins, b, coupling (nn|lr|both), lr_exponent, g, gamma,
///   drive (linear|sin|none), v, omega,
///   tau_max, n_samples, dt_initial, rel_tol, max_halvings,
///   curve_param (none|g|v|gamma), curve_values (comma list),
///   axis1 (g|v|gamma|n_spins), axis1_values | axis1_range (min:max:count),
///   axis2 (gamma), axis2_values | axis2_range,
///   n_values (comma list of integers),
///   threads, out
struct ExperimentConfig {
  int n_spins = 8;
  double b = 1.0;
  std::string coupling = "nn";
  double lr_exponent = 1.0;
  double g = 0.0;
  double gamma = 0.0;

  std::string drive = "linear";
  double v = 0.0;
  double omega = 4.0;

  double tau_max = 20.0;
  int n_samples = 400;
  double dt_initial = 1e-3;
  double rel_tol = 1e-8;
  int max_halvings = 12;

  std::string curve_param = "none";
  std::vector<double> curve_values;

  std::string axis1;
  std::vector<double> axis1_values;
  std::string axis2;
  std::vector<double> axis2_values;

  std::vector<int> n_values;

  int threads = 0;
  std::string out = ".";
};

/// Applies one key=value pair; `where` prefixes error messages
/// (e.g. "run.cfg:3" or "--flag").
void apply_key(ExperimentConfig& config, const std::string& key,
               const std::string& value, const std::string& where);

/// Parses a config file; errors carry file:line locations.
void apply_config_file(ExperimentConfig& config, const std::string& path);

/// Expands a figure preset (fig1a .. fig9b) into the configuration.
void apply_preset(ExperimentConfig& config, const std::string& name);

std::vector<std::string> preset_names();

/// The subcommand a preset belongs to: "trace", "sweep", or "wmax".
std::string preset_command(const std::string& name);

/// The fully resolved parameter set as a deterministic single-line string,
/// recorded in every output file header.
std::string resolved_string(const ExperimentConfig& config);

}  // namespace qbat
