#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "anls/evolution.hpp"
#include "anls/grid.hpp"
#include "anls/kernel_decay.hpp"

namespace anls {

/// Process exit codes of `anls run` and the subcommands.
enum class ExitCode : int {
  ok = 0,
  failure = 1,
  unknown_experiment = 2,
  invalid_config = 3,
  unwritable_output = 4,
  solver_failure = 5,
};

/// Schema or syntax problem in a run configuration. `where` names the field
/// ("grid.nx") or the line ("line 4").
class ConfigError : public Error {
 public:
  ConfigError(std::string where, const std::string& message)
      : Error(where + ": " + message), where_(std::move(where)) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

class UnknownExperimentError : public Error {
 public:
  using Error::Error;
};

class OutputDirError : public Error {
 public:
  using Error::Error;
};

const std::vector<std::string>& experiment_names();

struct SolverConfig {
  double step_tol = 1e-10;
  double residual_tol = 1e-8;
  std::size_t max_iter = 5000;
  std::size_t restarts = 1;
};

/// Initial data for evolve-type experiments.
struct InitialData {
  /// "gaussian", "zero", "ground_state" or "snapshot"
  std::string kind = "gaussian";
  double amplitude = 1.0;
  double sigma_x = 1.0;
  double sigma_y = 1.0;
  /// ground_state: scale_lambda parameter and multiplicative noise size.
  /// Unset values take the experiment's default (1 and 0; the probes use
  /// delta = 1e-2, and lambda = 1.05 for instability-probe).
  std::optional<double> lambda;
  std::optional<double> delta;
  std::string path;
};

struct RunConfig {
  std::string experiment;
  ModelParams model;
  Grid2D grid = Grid2D::square(256, 20.0);
  std::optional<EvolveConfig> evolve;
  SolverConfig solver;
  std::filesystem::path output_dir;
  std::uint64_t rng_seed = 20240611;

  InitialData initial;
  std::vector<double> snapshot_times;
  /// gn-constant
  std::size_t quotient_restarts = 0;
  /// decay-fit: second box half-width for the stability check (0 = skip)
  double enlarged_half_width = 0.0;
  DecayFitOptions decay;
  /// stability/instability probes
  double tube = 0.1;
  /// blowup-scan
  std::vector<double> p_list;
  std::vector<double> amplitude_list;
  std::size_t workers = 0;
  /// kernel-eval
  double quad_tol = 1e-10;
  std::vector<double> kernel_x;
  std::vector<double> kernel_y;
};

struct ScanCell {
  double p = 0.0;
  double amplitude = 0.0;
  std::string status;
  double t_final = 0.0;
  double energy0 = 0.0;
  double mass0 = 0.0;
  std::string membership;
  double j_omega = 0.0;
  double q = 0.0;
  double k = 0.0;
  bool in_B1 = false;
  double m_omega = 0.0;
  std::string error;
  std::vector<DiagnosticsRecord> records;
};

/// Evolves A * exp(-x^2 - y^2) for every (p, A), cells distributed over a
/// bounded pool of worker threads. Results come back in row-major cell order;
/// a failing cell records its error and the scan continues.
std::vector<ScanCell> blowup_scan(const std::vector<double>& p_list,
                                  const std::vector<double>& amplitude_list, const RunConfig& config);

/// Parses a JSON configuration; absent fields keep their defaults, unknown
/// fields are errors. Throws ConfigError or UnknownExperimentError.
RunConfig parse_config(std::string_view json_text);

/// Fully resolved configuration as pretty JSON (the manifest payload).
std::string config_to_json(const RunConfig& config);

/// Output root: $ANLS_OUTPUT_DIR or ./anls_output.
std::filesystem::path default_output_root();

struct RunReport {
  ExitCode code = ExitCode::ok;
  std::filesystem::path output_dir;
  std::vector<std::string> artifacts;
};

/// Runs the configured experiment, writes its artifacts and manifest.json into
/// config.output_dir and a one-page summary to `summary`.
RunReport run(const RunConfig& config, std::ostream& summary);

/// Maps an exception from run() to its exit code and an error JSON line.
ExitCode classify_error(const std::exception& e, std::string& error_json);

}  // namespace anls
