#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pdjc/algebra.hpp"
#include "pdjc/spectrum.hpp"

// Scenario runner behind the `pdjc` command line tool: configuration,
// spectrum scans, observable series, oracle validation, CSV/JSON output.
namespace pdjc::cli {

enum class Observable { inversion, fidelity, entropy, mandel_q, squeezing };

std::string_view to_string(Observable obs);
// Throws ConfigError("observables", ...) for unknown names.
Observable parse_observable(std::string_view name);
// Comma separated list; order in the output follows the fixed column order.
std::vector<Observable> parse_observable_list(std::string_view list);
std::vector<Observable> all_observables();

struct SpectrumSettings {
  std::vector<int> n_list{1, 2};
  double delta_min = -0.1;
  double delta_max = 0.1;
  double delta_step = 0.001;

  friend bool operator==(const SpectrumSettings&, const SpectrumSettings&) = default;
};

struct RunConfig {
  double omega = 1.0;
  double omega0 = 1.0;
  double g = 0.01;
  double lambda = 0.0;
  double w_mod_sq = 30.0;
  double w_phase = 0.0;
  double t_max_scaled = 200.0;
  std::optional<double> t_max;  // absolute time; required when g == 0
  int n_points = 2001;
  double tail_tol = kDefaultTailTol;
  std::optional<int> n_trunc_override;
  std::vector<Observable> observables = all_observables();
  SpectrumSettings spectrum;
  bool with_oracle = false;

  // Throws ConfigError naming the first invalid field.
  void validate() const;

  ModelParams model() const;
  CatStateParams cat() const;
  bool scaled_axis() const noexcept { return g != 0.0; }
  // Absolute times t (= gt/g on the scaled axis).
  std::vector<double> time_grid() const;
  // Time axis as written to the CSV (gt, or t when g == 0).
  std::vector<double> axis_grid() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// JSON document -> config. Missing keys keep their defaults; if "delta" is
// given and "omega0" is not, omega0 = omega - delta. Validates the result.
RunConfig parse_config(std::string_view json_text);
RunConfig load_config(const std::filesystem::path& path);
std::string serialize_config(const RunConfig& config);

/// Rows of optional doubles; std::nullopt is written as an empty CSV field.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::optional<double>>> rows;

  std::string to_csv() const;
};

// The fixed column order, restricted to the requested observables.
std::vector<std::string> series_columns(const std::vector<Observable>& observables,
                                        bool scaled_axis);

Table spectrum_table(const RunConfig& config);

struct ColumnStats {
  double min = 0.0;
  double max = 0.0;
  double arg_gt_min = 0.0;
  double arg_gt_max = 0.0;
};

struct EvolutionResult {
  Table series;
  double norm_defect_max = 0.0;
  double final_norm_defect = 0.0;
  std::optional<double> oracle_deviation_max;
  std::map<std::string, ColumnStats> per_observable;

  std::string summary_json() const;
};

EvolutionResult evolve(const RunConfig& config);

struct ValidationReport {
  int n_trunc = 0;
  int n_trunc_required = 0;
  double amplitude_deviation_max = 0.0;
  std::string deviation_location;
  double spectrum_residual_max = 0.0;
  double norm_defect_max = 0.0;
  double leakage_max = 0.0;
  std::vector<std::string> failures;

  static constexpr double kDeviationThreshold = 1e-8;
  static constexpr double kSpectrumThreshold = 1e-10;
  static constexpr double kNormThreshold = 1e-12;
  static constexpr double kLeakageThreshold = 1e-12;

  bool passed() const noexcept { return failures.empty(); }
  std::string to_json() const;
};

ValidationReport validate(const RunConfig& config);

// File-writing entry points used by the tool. Each creates out_dir if needed.
void run_spectrum(const RunConfig& config, const std::filesystem::path& out_dir);
EvolutionResult run_evolution(const RunConfig& config, const std::filesystem::path& out_dir);
ValidationReport run_validate(const RunConfig& config, const std::filesystem::path& out_dir);

}  // namespace pdjc::cli
