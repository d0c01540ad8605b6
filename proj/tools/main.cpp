#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "anls/experiments.hpp"
#include "json.hpp"

using nlohmann::json;

namespace {

struct Overrides {
  std::string config_path;
  std::optional<double> p, omega, lx, ly, length;
  std::optional<std::size_t> nx, ny, n;
  std::optional<double> dt, t_max;
  std::optional<std::size_t> diag_stride;
  std::optional<std::string> splitting, boundary;
  std::optional<double> blowup_factor, max_phase, max_energy_drift;
  std::optional<std::string> output_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> restarts, quotient_restarts, workers;
  std::optional<std::string> initial, snapshot_path;
  std::optional<double> amplitude, lambda, delta, tube, enlarged, quad_tol;
  std::vector<double> p_list, amplitude_list, kernel_x, kernel_y, snapshot_times;
};

template <class T>
void set_if(json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

void add_options(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "JSON configuration file; flags override it");
  cmd->add_option("--p", o.p, "Nonlinearity exponent");
  cmd->add_option("--omega", o.omega, "Frequency");
  cmd->add_option("--n", o.n, "Grid points per axis (square grid)");
  cmd->add_option("--L", o.length, "Box side length (square box)");
  cmd->add_option("--nx", o.nx, "Grid points along x");
  cmd->add_option("--ny", o.ny, "Grid points along y");
  cmd->add_option("--lx", o.lx, "Box length along x");
  cmd->add_option("--ly", o.ly, "Box length along y");
  cmd->add_option("--dt", o.dt, "Time step");
  cmd->add_option("--t-max", o.t_max, "Final time");
  cmd->add_option("--diag-stride", o.diag_stride, "Steps between diagnostics records");
  cmd->add_option("--splitting", o.splitting, "strang or lie");
  cmd->add_option("--boundary-policy", o.boundary, "stop or record");
  cmd->add_option("--blowup-factor", o.blowup_factor, "H12 growth factor reported as blowup");
  cmd->add_option("--max-phase", o.max_phase, "Cap on nonlinear phase per step, 0 disables");
  cmd->add_option("--max-energy-drift", o.max_energy_drift,
                  "End as blowup once |E - E0| exceeds this fraction of the initial H12 norm squared");
  cmd->add_option("--output-dir", o.output_dir, "Artifact directory");
  cmd->add_option("--seed", o.seed, "Random seed");
  cmd->add_option("--restarts", o.restarts, "Ground-state solver restarts");
  cmd->add_option("--quotient-restarts", o.quotient_restarts, "GN quotient maximization restarts");
  cmd->add_option("--initial", o.initial, "gaussian, zero, ground_state or snapshot");
  cmd->add_option("--snapshot", o.snapshot_path, "Initial snapshot file");
  cmd->add_option("--amplitude", o.amplitude, "Gaussian amplitude");
  cmd->add_option("--lambda", o.lambda, "Scaling applied to the ground state");
  cmd->add_option("--delta", o.delta, "Perturbation size");
  cmd->add_option("--tube", o.tube, "Orbital tube radius");
  cmd->add_option("--enlarged", o.enlarged, "Half-width of the enlarged box for decay-fit");
  cmd->add_option("--quad-tol", o.quad_tol, "Kernel quadrature tolerance");
  cmd->add_option("--workers", o.workers, "Worker threads for blowup-scan, 0 = hardware");
  cmd->add_option("--p-list", o.p_list, "Exponents for blowup-scan")->delimiter(',');
  cmd->add_option("--amplitudes", o.amplitude_list, "Amplitudes for blowup-scan")->delimiter(',');
  cmd->add_option("--kernel-x", o.kernel_x, "x coordinates for kernel-eval")->delimiter(',');
  cmd->add_option("--kernel-y", o.kernel_y, "y coordinates for kernel-eval")->delimiter(',');
  cmd->add_option("--snapshot-times", o.snapshot_times, "Times at which evolve saves snapshots")
      ->delimiter(',');
}

std::string merge(const std::string& experiment, const Overrides& o) {
  json j = json::object();
  if (!o.config_path.empty()) {
    std::ifstream in(o.config_path);
    if (!in) throw anls::ConfigError(o.config_path, "cannot read configuration file");
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    // Syntax errors are reported with line numbers by the config parser.
    if (!json::accept(text)) return text;
    j = json::parse(text);
    if (!j.is_object()) throw anls::ConfigError("config", "top level must be an object");
    if (j.contains("experiment") && j["experiment"] != experiment) {
      throw anls::ConfigError("experiment", "configuration names \"" + j["experiment"].get<std::string>() +
                                                "\" but the subcommand is \"" + experiment + "\"");
    }
  }
  j["experiment"] = experiment;

  auto section = [&j](const char* key) -> json& {
    if (!j.contains(key) || !j[key].is_object()) j[key] = json::object();
    return j[key];
  };
  if (o.p || o.omega) {
    json& m = section("model");
    set_if(m, "p", o.p);
    set_if(m, "omega", o.omega);
  }
  if (o.n || o.length || o.nx || o.ny || o.lx || o.ly) {
    json& g = section("grid");
    set_if(g, "nx", o.n);
    set_if(g, "ny", o.n);
    set_if(g, "lx", o.length);
    set_if(g, "ly", o.length);
    set_if(g, "nx", o.nx);
    set_if(g, "ny", o.ny);
    set_if(g, "lx", o.lx);
    set_if(g, "ly", o.ly);
  }
  if (o.dt || o.t_max || o.diag_stride || o.splitting || o.boundary || o.blowup_factor || o.max_phase ||
      o.max_energy_drift) {
    json& e = section("evolve");
    set_if(e, "dt", o.dt);
    set_if(e, "t_max", o.t_max);
    set_if(e, "diag_stride", o.diag_stride);
    set_if(e, "splitting_order", o.splitting);
    set_if(e, "boundary_policy", o.boundary);
    set_if(e, "blowup_h12_factor", o.blowup_factor);
    set_if(e, "max_phase_per_step", o.max_phase);
    set_if(e, "max_energy_drift", o.max_energy_drift);
  }
  if (o.restarts) section("solver")["restarts"] = *o.restarts;
  if (o.initial || o.snapshot_path || o.amplitude || o.lambda || o.delta) {
    json& i = section("initial");
    set_if(i, "kind", o.initial);
    set_if(i, "path", o.snapshot_path);
    set_if(i, "amplitude", o.amplitude);
    set_if(i, "lambda", o.lambda);
    set_if(i, "delta", o.delta);
    if (o.snapshot_path && !o.initial) i["kind"] = "snapshot";
  }
  set_if(j, "output_dir", o.output_dir);
  set_if(j, "rng_seed", o.seed);
  set_if(j, "quotient_restarts", o.quotient_restarts);
  set_if(j, "workers", o.workers);
  set_if(j, "tube", o.tube);
  set_if(j, "enlarged_half_width", o.enlarged);
  set_if(j, "quad_tol", o.quad_tol);
  if (!o.p_list.empty()) j["p_list"] = o.p_list;
  if (!o.amplitude_list.empty()) j["amplitude_list"] = o.amplitude_list;
  if (!o.kernel_x.empty()) j["kernel_x"] = o.kernel_x;
  if (!o.kernel_y.empty()) j["kernel_y"] = o.kernel_y;
  if (!o.snapshot_times.empty()) j["snapshot_times"] = o.snapshot_times;
  return j.dump(2);
}

int fail(const std::exception& e) {
  std::string error_json;
  const auto code = anls::classify_error(e, error_json);
  std::cerr << error_json << "\n";
  return static_cast<int>(code);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Anisotropic fourth-order NLS toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "anls 0.1.0");

  Overrides o;
  bool print_config = false;
  app.add_flag("--print-config", print_config, "Print the resolved configuration and exit");
  std::vector<std::pair<std::string, CLI::App*>> commands;
  for (const auto& name : anls::experiment_names()) {
    auto* cmd = app.add_subcommand(name, "Run the " + name + " experiment");
    add_options(cmd, o);
    commands.emplace_back(name, cmd);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    const std::string unknown = argc > 1 ? argv[1] : "";
    if (e.get_name() == "RequiredError" || e.get_name() == "ExtrasError") {
      bool known = false;
      for (const auto& [name, cmd] : commands) known = known || cmd->parsed();
      if (!known && !unknown.empty() && unknown[0] != '-') {
        return fail(anls::UnknownExperimentError("unknown experiment \"" + unknown + "\""));
      }
    }
    app.exit(e);
    return static_cast<int>(anls::ExitCode::invalid_config);
  }

  std::string experiment;
  for (const auto& [name, cmd] : commands) {
    if (cmd->parsed()) experiment = name;
  }

  try {
    const auto config = anls::parse_config(merge(experiment, o));
    if (print_config) {
      std::cout << anls::config_to_json(config);
      return 0;
    }
    anls::run(config, std::cout);
  } catch (const std::exception& e) {
    return fail(e);
  }
  return 0;
}
