// pdjc: spectrum scans, observable series and oracle validation for the
// parity-deformed Jaynes-Cummings model.
//
//   pdjc spectrum --config run.json --out results/
//   pdjc evolve   --config run.json --out results/ --observables inversion,entropy --with-oracle
//   pdjc validate --config run.json --out results/
//
// PDJC_THREADS sets the worker count.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pdjc/errors.hpp"
#include "pdjc/scenario.hpp"

namespace {

struct CommonOptions {
  std::string config_path;
  std::string out_dir = ".";
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "JSON run configuration (defaults if omitted)");
  cmd->add_option("--out", opts.out_dir, "Output directory")->capture_default_str();
}

pdjc::cli::RunConfig load(const CommonOptions& opts) {
  if (opts.config_path.empty()) {
    pdjc::cli::RunConfig config;
    config.validate();
    return config;
  }
  return pdjc::cli::load_config(opts.config_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parity-deformed Jaynes-Cummings simulator"};
  app.require_subcommand(1);

  CommonOptions spectrum_opts, evolve_opts, validate_opts;
  std::string observables;
  bool with_oracle = false;

  auto* spectrum = app.add_subcommand("spectrum", "Dressed eigenvalues versus detuning (CSV)");
  add_common(spectrum, spectrum_opts);

  auto* evolve = app.add_subcommand("evolve", "Observable time series (CSV + JSON summary)");
  add_common(evolve, evolve_opts);
  evolve->add_option("--observables", observables,
                     "Comma separated subset of inversion,fidelity,entropy,mandel_q,squeezing");
  evolve->add_flag("--with-oracle", with_oracle, "Also compare against the brute-force oracle");

  auto* validate = app.add_subcommand("validate", "Closed form versus oracle report (JSON)");
  add_common(validate, validate_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (spectrum->parsed()) {
      const auto config = load(spectrum_opts);
      pdjc::cli::run_spectrum(config, spectrum_opts.out_dir);
      return 0;
    }
    if (evolve->parsed()) {
      auto config = load(evolve_opts);
      if (!observables.empty()) config.observables = pdjc::cli::parse_observable_list(observables);
      if (with_oracle) config.with_oracle = true;
      const auto result = pdjc::cli::run_evolution(config, evolve_opts.out_dir);
      std::cout << result.summary_json();
      return 0;
    }
    const auto config = load(validate_opts);
    const auto report = pdjc::cli::run_validate(config, validate_opts.out_dir);
    std::cout << report.to_json();
    return report.passed() ? 0 : 1;
  } catch (const pdjc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
