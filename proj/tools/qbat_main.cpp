#include <CLI11.hpp>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "qbat/commands.hpp"
#include "qbat/version.hpp"

namespace {

// Configuration keys mirrored as --key flags (applied after preset and file).
const char* kFlagKeys[] = {
    "n_spins",      "b",           "coupling",    "lr_exponent",  "g",
    "gamma",        "drive",       "v",           "omega",        "tau_max",
    "n_samples",    "dt_initial",  "rel_tol",     "max_halvings", "curve_param",
    "curve_values", "axis1",       "axis1_values", "axis1_range", "axis2",
    "axis2_values", "axis2_range", "n_values",    "threads",      "out"};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qbat: spin-chain quantum battery charging simulator"};
  app.set_version_flag("--version", std::string("qbat ") + qbat::kVersion);
  app.require_subcommand(1);

  std::string preset, config_file;
  app.add_option("--preset", preset, "Figure preset (fig1a..fig9b)");
  app.add_option("--config", config_file, "Key=value configuration file");

  std::vector<std::pair<std::string, std::string>> overrides;
  for (const char* key : kFlagKeys) {
    app.add_option_function<std::string>(
           std::string("--") + key,
           [key, &overrides](const std::string& value) {
             overrides.emplace_back(key, value);
           })
        ->expected(1);
  }

  CLI::App* trace = app.add_subcommand("trace", "W(tau), P(tau) curves -> trace.csv");
  CLI::App* sweep = app.add_subcommand("sweep", "parameter grids -> grid.csv, meta.csv");
  CLI::App* wmax = app.add_subcommand("wmax", "W_max vs N tables -> wmax.csv");
  CLI::App* validate =
      app.add_subcommand("validate", "oracle panel and invariant checks");
  std::string fault;
  validate->add_option("--inject-fault", fault, "test hook")->group("");
  for (CLI::App* sub : {trace, sweep, wmax, validate}) {
    sub->fallthrough();  // configuration flags may follow the subcommand
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    qbat::ExperimentConfig config;
    if (!preset.empty()) qbat::apply_preset(config, preset);
    if (!config_file.empty()) qbat::apply_config_file(config, config_file);
    for (const auto& [key, value] : overrides) {
      qbat::apply_key(config, key, value, "--" + key);
    }

    if (trace->parsed()) return qbat::cmd_trace(config);
    if (sweep->parsed()) return qbat::cmd_sweep(config);
    if (wmax->parsed()) return qbat::cmd_wmax(config);
    if (validate->parsed()) {
      const auto injection = fault == "corrupt-hamiltonian-sign"
                                 ? qbat::FaultInjection::corrupt_hamiltonian_sign
                                 : qbat::FaultInjection::none;
      if (!fault.empty() && injection == qbat::FaultInjection::none) {
        throw qbat::argument_error("unknown fault '" + fault + "'");
      }
      return qbat::cmd_validate(injection);
    }
    return 2;
  } catch (const qbat::argument_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
