#include "pdjc/scenario.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "pdjc/dynamics.hpp"
#include "pdjc/errors.hpp"
#include "pdjc/observables.hpp"
#include "pdjc/oracle.hpp"
#include "pdjc/parallel.hpp"

namespace pdjc::cli {

using nlohmann::json;

namespace {

constexpr std::array<std::string_view, 5> kObservableNames = {"inversion", "fidelity", "entropy",
                                                              "mandel_q", "squeezing"};

constexpr std::array<std::string_view, 12> kColumnOrder = {
    "gt", "inversion", "fidelity", "entropy", "g_plus", "g_minus",
    "mandel_q", "s_x", "s_p", "sigma_xx", "sigma_pp", "bound"};

bool wants(const std::vector<Observable>& list, Observable obs) {
  return std::find(list.begin(), list.end(), obs) != list.end();
}

std::string format_value(double v) { return fmt::format("{:.17g}", v); }

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << content;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
}

double number(const json& doc, const char* key) {
  const json& v = doc.at(key);
  if (!v.is_number()) throw ConfigError(key, "expected a number");
  return v.get<double>();
}

int integer(const json& doc, const char* key) {
  const json& v = doc.at(key);
  if (!v.is_number_integer()) throw ConfigError(key, "expected an integer");
  return v.get<int>();
}

void require_finite(const char* field, double v) {
  if (!std::isfinite(v)) throw ConfigError(field, "must be finite");
}

// Levels that closed-form dynamics and the oracle need for this field.
int required_n_trunc(const FieldState& field) { return 2 * field.n_even_max() + 2; }

// Drops amplitudes on levels above n_trunc so an undersized oracle can still run.
JointState clipped(JointState s, int n_trunc) {
  for (int n = 0; n < s.blocks(); ++n) {
    if (2 * n > n_trunc) s.c_plus[n] = {};
    if (2 * n + 1 > n_trunc) s.c_minus[n] = {};
  }
  return s;
}

struct OracleCheck {
  oracle::Deviation deviation;
  double norm_defect_max = 0.0;
  double eigenvalue_mismatch = 0.0;
};

OracleCheck run_oracle_check(const JointState& initial, const JointTrajectory& traj, int n_trunc) {
  const auto h = oracle::build_hamiltonian(initial.params, n_trunc);
  const auto h0 = oracle::build_h0(initial.params, n_trunc);
  const oracle::NumericPropagator prop(h, h0);
  const Eigen::VectorXcd psi0 = oracle::to_full_vector(clipped(initial, n_trunc), n_trunc);

  oracle::OracleRun run;
  run.n_trunc = n_trunc;
  run.grid = traj.grid;
  run.states.resize(traj.grid.size());
  parallel_for(traj.grid.size(),
               [&](std::size_t i) { run.states[i] = prop.interaction(psi0, traj.grid[i]); });

  OracleCheck check;
  check.deviation = oracle::compare(traj, run);
  const double norm0 = psi0.squaredNorm();
  for (const auto& psi : run.states) {
    check.norm_defect_max = std::max(check.norm_defect_max, std::abs(psi.squaredNorm() - norm0));
  }
  const std::vector<double> analytic = truncated_spectrum(initial.params, n_trunc);
  for (int k = 0; k < prop.dim(); ++k) {
    check.eigenvalue_mismatch =
        std::max(check.eigenvalue_mismatch,
                 static_cast<double>(std::abs(prop.eigenvalues()(k) - analytic[k])));
  }
  return check;
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

std::string_view to_string(Observable obs) { return kObservableNames[static_cast<int>(obs)]; }

Observable parse_observable(std::string_view name) {
  for (std::size_t i = 0; i < kObservableNames.size(); ++i) {
    if (kObservableNames[i] == name) return static_cast<Observable>(i);
  }
  throw ConfigError("observables", "unknown observable '" + std::string(name) + "'");
}

std::vector<Observable> all_observables() {
  return {Observable::inversion, Observable::fidelity, Observable::entropy, Observable::mandel_q,
          Observable::squeezing};
}

std::vector<Observable> parse_observable_list(std::string_view list) {
  std::vector<Observable> picked;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    const std::size_t comma = std::min(list.find(',', pos), list.size());
    std::string_view item = list.substr(pos, comma - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) picked.push_back(parse_observable(item));
    pos = comma + 1;
  }
  if (picked.empty()) throw ConfigError("observables", "empty observable list");
  std::vector<Observable> ordered;
  for (Observable obs : all_observables()) {
    if (wants(picked, obs)) ordered.push_back(obs);
  }
  return ordered;
}

void RunConfig::validate() const {
  for (auto [field, v] : {std::pair{"omega", omega}, {"omega0", omega0}, {"g", g},
                          {"lambda", lambda}, {"w_mod_sq", w_mod_sq}, {"w_phase", w_phase},
                          {"t_max_scaled", t_max_scaled}, {"tail_tol", tail_tol}}) {
    require_finite(field, v);
  }
  if (!(omega > 0.0)) throw ConfigError("omega", "must be > 0");
  if (!(omega0 > 0.0)) throw ConfigError("omega0", "must be > 0 (omega0 = omega - delta)");
  if (!(g >= 0.0)) throw ConfigError("g", "must be >= 0");
  if (!(lambda > -0.5)) throw ConfigError("lambda", "must be > -1/2");
  if (!(w_mod_sq >= 0.0)) throw ConfigError("w_mod_sq", "must be >= 0");
  if (!(tail_tol > 0.0 && tail_tol <= 1e-6)) throw ConfigError("tail_tol", "must lie in (0, 1e-6]");
  if (n_points < 2) throw ConfigError("n_points", "must be >= 2");
  if (scaled_axis()) {
    if (!(t_max_scaled > 0.0)) throw ConfigError("t_max_scaled", "must be > 0 (grid degenerate)");
  } else {
    if (!t_max) throw ConfigError("t_max", "required when g = 0 (no scaled time axis)");
    require_finite("t_max", *t_max);
    if (!(*t_max > 0.0)) throw ConfigError("t_max", "must be > 0 (grid degenerate)");
  }
  if (n_trunc_override && *n_trunc_override < 1) {
    throw ConfigError("n_trunc_override", "must be >= 1");
  }
  if (observables.empty()) throw ConfigError("observables", "empty observable list");
  if (!(spectrum.delta_step > 0.0) || !std::isfinite(spectrum.delta_step)) {
    throw ConfigError("spectrum.delta_step", "must be finite and > 0");
  }
  require_finite("spectrum.delta_min", spectrum.delta_min);
  require_finite("spectrum.delta_max", spectrum.delta_max);
  if (spectrum.delta_max >= omega) {
    throw ConfigError("spectrum.delta_max", "must be < omega so that omega0 stays positive");
  }
  for (int n : spectrum.n_list) {
    if (n < 0) throw ConfigError("spectrum.n_list", "block indices must be >= 0");
  }
}

ModelParams RunConfig::model() const {
  return ModelParams(omega, omega0, g, DeformationParam(lambda));
}

CatStateParams RunConfig::cat() const { return {w_mod_sq, w_phase}; }

std::vector<double> RunConfig::axis_grid() const {
  return linear_grid(0.0, scaled_axis() ? t_max_scaled : *t_max, n_points);
}

std::vector<double> RunConfig::time_grid() const {
  std::vector<double> grid = axis_grid();
  if (scaled_axis()) {
    for (double& t : grid) t /= g;
  }
  return grid;
}

RunConfig parse_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<document>", e.what());
  }
  if (!doc.is_object()) throw ConfigError("<document>", "expected a JSON object");

  static const std::array<std::string_view, 15> known = {
      "omega", "omega0", "delta", "g", "lambda", "w_mod_sq", "w_phase", "t_max_scaled",
      "t_max", "n_points", "tail_tol", "n_trunc_override", "observables", "spectrum",
      "with_oracle"};
  for (const auto& item : doc.items()) {
    if (std::find(known.begin(), known.end(), item.key()) == known.end()) {
      throw ConfigError(item.key(), "unknown key");
    }
  }

  RunConfig c;
  if (doc.contains("omega")) c.omega = number(doc, "omega");
  if (doc.contains("omega0") && doc.contains("delta")) {
    throw ConfigError("delta", "give either omega0 or delta, not both");
  }
  if (doc.contains("omega0")) {
    c.omega0 = number(doc, "omega0");
  } else if (doc.contains("delta")) {
    c.omega0 = c.omega - number(doc, "delta");
  } else {
    c.omega0 = c.omega;
  }
  if (doc.contains("g")) c.g = number(doc, "g");
  if (doc.contains("lambda")) c.lambda = number(doc, "lambda");
  if (doc.contains("w_mod_sq")) c.w_mod_sq = number(doc, "w_mod_sq");
  if (doc.contains("w_phase")) c.w_phase = number(doc, "w_phase");
  if (doc.contains("t_max_scaled")) c.t_max_scaled = number(doc, "t_max_scaled");
  if (doc.contains("t_max") && !doc["t_max"].is_null()) c.t_max = number(doc, "t_max");
  if (doc.contains("n_points")) c.n_points = integer(doc, "n_points");
  if (doc.contains("tail_tol")) c.tail_tol = number(doc, "tail_tol");
  if (doc.contains("n_trunc_override") && !doc["n_trunc_override"].is_null()) {
    c.n_trunc_override = integer(doc, "n_trunc_override");
  }
  if (doc.contains("observables")) {
    const json& obs = doc["observables"];
    if (obs.is_string()) {
      c.observables = parse_observable_list(obs.get<std::string>());
    } else if (obs.is_array()) {
      std::string joined;
      for (const auto& o : obs) {
        if (!o.is_string()) throw ConfigError("observables", "expected strings");
        joined += o.get<std::string>() + ",";
      }
      c.observables = parse_observable_list(joined);
    } else {
      throw ConfigError("observables", "expected a list of names");
    }
  }
  if (doc.contains("with_oracle")) {
    if (!doc["with_oracle"].is_boolean()) throw ConfigError("with_oracle", "expected a boolean");
    c.with_oracle = doc["with_oracle"].get<bool>();
  }
  if (doc.contains("spectrum")) {
    const json& s = doc["spectrum"];
    if (!s.is_object()) throw ConfigError("spectrum", "expected an object");
    for (const auto& item : s.items()) {
      const std::string& k = item.key();
      if (k == "n_list") {
        if (!item.value().is_array()) throw ConfigError("spectrum.n_list", "expected integers");
        c.spectrum.n_list.clear();
        for (const auto& n : item.value()) {
          if (!n.is_number_integer()) throw ConfigError("spectrum.n_list", "expected integers");
          c.spectrum.n_list.push_back(n.get<int>());
        }
      } else if (k == "delta_min" || k == "delta_max" || k == "delta_step") {
        if (!item.value().is_number()) throw ConfigError("spectrum." + k, "expected a number");
        const double v = item.value().get<double>();
        (k == "delta_min" ? c.spectrum.delta_min
                          : k == "delta_max" ? c.spectrum.delta_max : c.spectrum.delta_step) = v;
      } else {
        throw ConfigError("spectrum." + k, "unknown key");
      }
    }
  }
  c.validate();
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const RunConfig& c) {
  json doc;
  doc["omega"] = c.omega;
  doc["omega0"] = c.omega0;
  doc["g"] = c.g;
  doc["lambda"] = c.lambda;
  doc["w_mod_sq"] = c.w_mod_sq;
  doc["w_phase"] = c.w_phase;
  doc["t_max_scaled"] = c.t_max_scaled;
  doc["t_max"] = optional_json(c.t_max);
  doc["n_points"] = c.n_points;
  doc["tail_tol"] = c.tail_tol;
  doc["n_trunc_override"] = c.n_trunc_override ? json(*c.n_trunc_override) : json(nullptr);
  json obs = json::array();
  for (Observable o : c.observables) obs.push_back(std::string(to_string(o)));
  doc["observables"] = obs;
  doc["spectrum"] = {{"n_list", c.spectrum.n_list},
                     {"delta_min", c.spectrum.delta_min},
                     {"delta_max", c.spectrum.delta_max},
                     {"delta_step", c.spectrum.delta_step}};
  doc["with_oracle"] = c.with_oracle;
  return doc.dump(2) + "\n";
}

std::string Table::to_csv() const {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out += ',';
    out += header[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      if (row[i]) out += format_value(*row[i]);
    }
    out += '\n';
  }
  return out;
}

std::vector<std::string> series_columns(const std::vector<Observable>& observables,
                                        bool scaled_axis) {
  std::vector<std::string> cols;
  for (std::string_view name : kColumnOrder) {
    const bool keep =
        name == "gt" ||
        (name == "inversion" && wants(observables, Observable::inversion)) ||
        (name == "fidelity" && wants(observables, Observable::fidelity)) ||
        ((name == "entropy" || name == "g_plus" || name == "g_minus") &&
         wants(observables, Observable::entropy)) ||
        (name == "mandel_q" && wants(observables, Observable::mandel_q)) ||
        ((name == "s_x" || name == "s_p" || name == "sigma_xx" || name == "sigma_pp" ||
          name == "bound") &&
         wants(observables, Observable::squeezing));
    if (keep) cols.emplace_back(name == "gt" && !scaled_axis ? "t" : name);
  }
  return cols;
}

Table spectrum_table(const RunConfig& config) {
  config.validate();
  const DetuningRange range{config.spectrum.delta_min, config.spectrum.delta_max,
                            config.spectrum.delta_step};
  Table table;
  table.header = {"n", "delta", "e_plus", "e_minus"};
  for (const SpectrumRow& r : spectrum_scan(config.spectrum.n_list, config.omega, config.g,
                                            DeformationParam(config.lambda), range)) {
    table.rows.push_back({static_cast<double>(r.n), r.delta, r.e_plus, r.e_minus});
  }
  return table;
}

EvolutionResult evolve(const RunConfig& config) {
  config.validate();
  const ModelParams params = config.model();
  const FieldState field = wcs_build(config.cat(), params.lambda, config.tail_tol);
  const std::vector<double> times = config.time_grid();
  const std::vector<double> axis = config.axis_grid();
  const JointTrajectory traj = trajectory(field, params, times);
  const JointState initial = excited_initial_state(field, params);
  const double norm0 = initial.norm_sq();

  EvolutionResult result;
  result.series.header = series_columns(config.observables, config.scaled_axis());
  const auto& obs = config.observables;
  result.series.rows.resize(times.size());
  parallel_for(times.size(), [&](std::size_t i) {
    const JointState& s = traj.states[i];
    std::vector<std::optional<double>> row{axis[i]};
    if (wants(obs, Observable::inversion)) row.emplace_back(atomic_inversion(s));
    if (wants(obs, Observable::fidelity)) row.emplace_back(fidelity(initial, s));
    if (wants(obs, Observable::entropy)) {
      const auto e = entanglement(s);
      row.insert(row.end(), {e.entropy, e.g_plus, e.g_minus});
    }
    if (wants(obs, Observable::mandel_q)) {
      try {
        row.emplace_back(mandel_q(s).mandel_q);
      } catch (const UndefinedStatistics&) {
        row.emplace_back(std::nullopt);
      }
    }
    if (wants(obs, Observable::squeezing)) {
      const auto sq = squeezing(s);
      row.insert(row.end(), {sq.s_x, sq.s_p, sq.sigma_xx, sq.sigma_pp, sq.bound});
    }
    result.series.rows[i] = std::move(row);
  });

  for (const auto& s : traj.states) {
    result.norm_defect_max = std::max(result.norm_defect_max, std::abs(s.norm_sq() - norm0));
  }
  result.final_norm_defect = std::abs(traj.states.back().norm_sq() - norm0);

  for (std::size_t col = 1; col < result.series.header.size(); ++col) {
    std::optional<ColumnStats> stats;
    for (std::size_t i = 0; i < result.series.rows.size(); ++i) {
      const auto& v = result.series.rows[i][col];
      if (!v) continue;
      if (!stats) stats = ColumnStats{*v, *v, axis[i], axis[i]};
      if (*v < stats->min) stats->min = *v, stats->arg_gt_min = axis[i];
      if (*v > stats->max) stats->max = *v, stats->arg_gt_max = axis[i];
    }
    if (stats) result.per_observable[result.series.header[col]] = *stats;
  }

  if (config.with_oracle) {
    const int n_trunc = config.n_trunc_override.value_or(required_n_trunc(field));
    result.oracle_deviation_max = run_oracle_check(initial, traj, n_trunc).deviation.max_abs;
  }
  return result;
}

std::string EvolutionResult::summary_json() const {
  json doc;
  doc["norm_defect_max"] = norm_defect_max;
  doc["final_norm_defect"] = final_norm_defect;
  doc["oracle_deviation_max"] = optional_json(oracle_deviation_max);
  json per = json::object();
  for (const auto& [name, s] : per_observable) {
    per[name] = {{"min", s.min}, {"max", s.max}, {"arg_gt_min", s.arg_gt_min},
                 {"arg_gt_max", s.arg_gt_max}};
  }
  doc["per_observable"] = per;
  return doc.dump(2) + "\n";
}

ValidationReport validate(const RunConfig& config) {
  config.validate();
  const ModelParams params = config.model();
  const FieldState field = wcs_build(config.cat(), params.lambda, config.tail_tol);
  const JointState initial = excited_initial_state(field, params);
  const JointTrajectory traj = trajectory(field, params, config.time_grid());

  ValidationReport report;
  report.n_trunc_required = required_n_trunc(field);
  report.n_trunc = config.n_trunc_override.value_or(report.n_trunc_required);
  if (report.n_trunc < report.n_trunc_required) {
    report.failures.push_back(fmt::format(
        "truncation_boundary_leakage: n_trunc = {} is below the required {} (field reaches Fock "
        "level {}, dynamics need one more raising step)",
        report.n_trunc, report.n_trunc_required, 2 * field.n_even_max()));
  }

  const double norm0 = initial.norm_sq();
  for (const auto& s : traj.states) {
    report.norm_defect_max = std::max(report.norm_defect_max, std::abs(s.norm_sq() - norm0));
  }
  for (int n = 0; n <= field.n_even_max(); ++n) {
    report.spectrum_residual_max = std::max(
        report.spectrum_residual_max, dressed_pair(n, params).residual(block_hamiltonian(n, params)));
  }

  const OracleCheck check = run_oracle_check(initial, traj, report.n_trunc);
  report.amplitude_deviation_max = check.deviation.max_abs;
  report.deviation_location = check.deviation.describe();
  report.leakage_max = check.deviation.leakage_max;
  report.norm_defect_max = std::max(report.norm_defect_max, check.norm_defect_max);
  report.spectrum_residual_max = std::max(report.spectrum_residual_max, check.eigenvalue_mismatch);

  if (report.amplitude_deviation_max > ValidationReport::kDeviationThreshold) {
    report.failures.push_back("amplitude_deviation: " + report.deviation_location);
  }
  if (report.spectrum_residual_max > ValidationReport::kSpectrumThreshold) {
    report.failures.push_back(
        fmt::format("spectrum_residual: {:.3g}", report.spectrum_residual_max));
  }
  if (report.norm_defect_max > ValidationReport::kNormThreshold) {
    report.failures.push_back(fmt::format("norm_defect: {:.3g}", report.norm_defect_max));
  }
  if (report.leakage_max > ValidationReport::kLeakageThreshold) {
    report.failures.push_back(fmt::format("complementary_leakage: {:.3g}", report.leakage_max));
  }
  return report;
}

std::string ValidationReport::to_json() const {
  json doc;
  doc["passed"] = passed();
  doc["n_trunc"] = n_trunc;
  doc["n_trunc_required"] = n_trunc_required;
  doc["amplitude_deviation_max"] = amplitude_deviation_max;
  doc["deviation_location"] = deviation_location;
  doc["spectrum_residual_max"] = spectrum_residual_max;
  doc["norm_defect_max"] = norm_defect_max;
  doc["leakage_max"] = leakage_max;
  doc["thresholds"] = {{"amplitude_deviation", kDeviationThreshold},
                       {"spectrum_residual", kSpectrumThreshold},
                       {"norm_defect", kNormThreshold},
                       {"leakage", kLeakageThreshold}};
  doc["failures"] = failures;
  return doc.dump(2) + "\n";
}

void run_spectrum(const RunConfig& config, const std::filesystem::path& out_dir) {
  const Table table = spectrum_table(config);
  ensure_dir(out_dir);
  write_file(out_dir / "spectrum.csv", table.to_csv());
}

EvolutionResult run_evolution(const RunConfig& config, const std::filesystem::path& out_dir) {
  EvolutionResult result = evolve(config);
  ensure_dir(out_dir);
  write_file(out_dir / "series.csv", result.series.to_csv());
  write_file(out_dir / "summary.json", result.summary_json());
  return result;
}

ValidationReport run_validate(const RunConfig& config, const std::filesystem::path& out_dir) {
  ValidationReport report = validate(config);
  ensure_dir(out_dir);
  write_file(out_dir / "validation.json", report.to_json());
  return report;
}

}  // namespace pdjc::cli
