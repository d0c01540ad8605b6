#include <algorithm>
#include <cstdlib>
#include <set>

#include "anls/experiments.hpp"
#include "json.hpp"

namespace anls {
namespace {

using nlohmann::json;

class Reader {
 public:
  Reader(const json& j, std::string prefix) : j_(j), prefix_(std::move(prefix)) {
    if (!j_.is_object()) throw ConfigError(name_or_root(), "expected an object");
  }

  template <class T>
  void get(const char* key, T& out) {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    const json& v = j_.at(key);
    try {
      if constexpr (std::is_same_v<T, double>) {
        if (!v.is_number()) throw ConfigError(path(key), "expected a number");
        out = v.get<double>();
        if (!std::isfinite(out)) throw ConfigError(path(key), "must be finite");
      } else if constexpr (std::is_same_v<T, bool>) {
        if (!v.is_boolean()) throw ConfigError(path(key), "expected true or false");
        out = v.get<bool>();
      } else if constexpr (std::is_integral_v<T>) {
        if (!v.is_number_integer() || (v.is_number_integer() && v.get<long long>() < 0)) {
          throw ConfigError(path(key), "expected a non-negative integer");
        }
        out = v.get<T>();
      } else if constexpr (std::is_same_v<T, std::string>) {
        if (!v.is_string()) throw ConfigError(path(key), "expected a string");
        out = v.get<std::string>();
      } else if constexpr (std::is_same_v<T, std::vector<double>>) {
        if (!v.is_array()) throw ConfigError(path(key), "expected an array of numbers");
        out.clear();
        for (std::size_t k = 0; k < v.size(); ++k) {
          if (!v[k].is_number()) {
            throw ConfigError(path(key) + "[" + std::to_string(k) + "]", "expected a number");
          }
          out.push_back(v[k].get<double>());
        }
      }
    } catch (const json::exception& e) {
      throw ConfigError(path(key), e.what());
    }
  }

  const json* child(const char* key) {
    seen_.insert(key);
    return j_.contains(key) ? &j_.at(key) : nullptr;
  }

  std::string path(const std::string& key) const { return prefix_.empty() ? key : prefix_ + "." + key; }

  void finish() const {
    for (const auto& [k, v] : j_.items()) {
      if (!seen_.count(k)) throw ConfigError(path(k), "unknown field");
    }
  }

 private:
  std::string name_or_root() const { return prefix_.empty() ? "config" : prefix_; }

  const json& j_;
  std::string prefix_;
  std::set<std::string> seen_;
};

bool power_of_two(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

void parse_grid(const json& j, RunConfig& c) {
  Reader r(j, "grid");
  std::size_t nx = c.grid.nx();
  std::size_t ny = c.grid.ny();
  double lx = c.grid.lx();
  double ly = c.grid.ly();
  r.get("nx", nx);
  r.get("ny", ny);
  r.get("lx", lx);
  r.get("ly", ly);
  r.finish();
  if (!power_of_two(nx)) throw ConfigError("grid.nx", "must be a power of two >= 2");
  if (!power_of_two(ny)) throw ConfigError("grid.ny", "must be a power of two >= 2");
  if (!(lx > 0.0)) throw ConfigError("grid.lx", "must be positive");
  if (!(ly > 0.0)) throw ConfigError("grid.ly", "must be positive");
  c.grid = Grid2D(nx, ny, lx, ly);
}

void parse_evolve(const json& j, EvolveConfig& e) {
  Reader r(j, "evolve");
  std::string splitting = e.splitting_order == Splitting::strang ? "strang" : "lie";
  std::string boundary = e.boundary_policy == BoundaryPolicy::stop ? "stop" : "record";
  r.get("dt", e.dt);
  r.get("t_max", e.t_max);
  r.get("splitting_order", splitting);
  r.get("diag_stride", e.diag_stride);
  r.get("blowup_h12_factor", e.blowup_h12_factor);
  r.get("dt_floor", e.dt_floor);
  r.get("boundary_policy", boundary);
  r.get("boundary_threshold", e.boundary_threshold);
  r.get("adapt_threshold", e.adapt_threshold);
  r.get("adaptive", e.adaptive);
  r.get("max_phase_per_step", e.max_phase_per_step);
  r.get("max_steps", e.max_steps);
  r.get("dealias", e.dealias);
  r.get("max_energy_drift", e.max_energy_drift);
  r.finish();
  if (splitting == "strang") {
    e.splitting_order = Splitting::strang;
  } else if (splitting == "lie") {
    e.splitting_order = Splitting::lie;
  } else {
    throw ConfigError("evolve.splitting_order", "expected \"strang\" or \"lie\"");
  }
  if (boundary == "stop") {
    e.boundary_policy = BoundaryPolicy::stop;
  } else if (boundary == "record") {
    e.boundary_policy = BoundaryPolicy::record;
  } else {
    throw ConfigError("evolve.boundary_policy", "expected \"stop\" or \"record\"");
  }
  try {
    e.validate();
  } catch (const DomainError& err) {
    throw ConfigError("evolve", err.what());
  }
}

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n'));
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{
      "ground-state", "evolve",          "gn-constant",       "virial-check", "decay-fit",
      "stability-probe", "instability-probe", "blowup-scan", "symmetry-report", "kernel-eval"};
  return names;
}

std::filesystem::path default_output_root() {
  if (const char* env = std::getenv("ANLS_OUTPUT_DIR"); env && *env) return env;
  return "anls_output";
}

RunConfig parse_config(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError("line " + std::to_string(line_of(text, e.byte == 0 ? 0 : e.byte - 1)),
                      "invalid JSON");
  }
  RunConfig c;
  Reader r(j, "");
  r.get("experiment", c.experiment);
  const auto& names = experiment_names();
  if (c.experiment.empty()) throw ConfigError("experiment", "missing");
  if (std::find(names.begin(), names.end(), c.experiment) == names.end()) {
    throw UnknownExperimentError("unknown experiment \"" + c.experiment + "\"");
  }

  if (const json* m = r.child("model")) {
    Reader mr(*m, "model");
    mr.get("p", c.model.p);
    mr.get("omega", c.model.omega);
    mr.finish();
  }
  try {
    c.model.validate();
  } catch (const DomainError& e) {
    throw ConfigError("model", e.what());
  }
  if (const json* g = r.child("grid")) parse_grid(*g, c);
  if (const json* e = r.child("evolve")) {
    EvolveConfig ec;
    parse_evolve(*e, ec);
    c.evolve = ec;
  }
  if (const json* s = r.child("solver")) {
    Reader sr(*s, "solver");
    sr.get("step_tol", c.solver.step_tol);
    sr.get("residual_tol", c.solver.residual_tol);
    sr.get("max_iter", c.solver.max_iter);
    sr.get("restarts", c.solver.restarts);
    sr.finish();
    if (c.solver.restarts == 0) throw ConfigError("solver.restarts", "must be at least 1");
  }
  std::string out;
  r.get("output_dir", out);
  c.output_dir = out;
  r.get("rng_seed", c.rng_seed);

  if (const json* i = r.child("initial")) {
    Reader ir(*i, "initial");
    ir.get("kind", c.initial.kind);
    ir.get("amplitude", c.initial.amplitude);
    ir.get("sigma_x", c.initial.sigma_x);
    ir.get("sigma_y", c.initial.sigma_y);
    double lambda = 0.0;
    double delta = 0.0;
    ir.get("lambda", lambda);
    ir.get("delta", delta);
    if (i->contains("lambda")) {
      if (!(lambda > 0.0)) throw ConfigError("initial.lambda", "must be positive");
      c.initial.lambda = lambda;
    }
    if (i->contains("delta")) {
      if (!(delta >= 0.0)) throw ConfigError("initial.delta", "must be non-negative");
      c.initial.delta = delta;
    }
    ir.get("path", c.initial.path);
    ir.finish();
    const std::set<std::string> kinds{"gaussian", "zero", "ground_state", "snapshot"};
    if (!kinds.count(c.initial.kind)) {
      throw ConfigError("initial.kind", "expected gaussian, zero, ground_state or snapshot");
    }
    if (c.initial.kind == "snapshot" && c.initial.path.empty()) {
      throw ConfigError("initial.path", "required for snapshot initial data");
    }
  }
  r.get("snapshot_times", c.snapshot_times);
  r.get("quotient_restarts", c.quotient_restarts);
  r.get("enlarged_half_width", c.enlarged_half_width);
  if (const json* d = r.child("decay")) {
    Reader dr(*d, "decay");
    std::vector<double> xw{c.decay.x_window.first, c.decay.x_window.second};
    std::vector<double> yw{c.decay.y_window.first, c.decay.y_window.second};
    dr.get("x_window", xw);
    dr.get("y_window", yw);
    dr.finish();
    if (xw.size() != 2 || !(xw[0] < xw[1])) throw ConfigError("decay.x_window", "expected [lo, hi]");
    if (yw.size() != 2 || !(yw[0] < yw[1])) throw ConfigError("decay.y_window", "expected [lo, hi]");
    c.decay.x_window = {xw[0], xw[1]};
    c.decay.y_window = {yw[0], yw[1]};
  }
  r.get("tube", c.tube);
  r.get("p_list", c.p_list);
  r.get("amplitude_list", c.amplitude_list);
  r.get("workers", c.workers);
  r.get("quad_tol", c.quad_tol);
  r.get("kernel_x", c.kernel_x);
  r.get("kernel_y", c.kernel_y);
  r.finish();

  if (c.experiment == "blowup-scan" && (c.p_list.empty() || c.amplitude_list.empty())) {
    throw ConfigError(c.p_list.empty() ? "p_list" : "amplitude_list", "must be non-empty for blowup-scan");
  }
  for (std::size_t k = 0; k < c.p_list.size(); ++k) {
    if (!(c.p_list[k] > 2.0)) throw ConfigError("p_list[" + std::to_string(k) + "]", "p must exceed 2");
  }
  if (c.kernel_x.size() != c.kernel_y.size()) {
    throw ConfigError("kernel_y", "kernel_x and kernel_y must have the same length");
  }
  if (!(c.quad_tol > 0.0)) throw ConfigError("quad_tol", "must be positive");
  return c;
}

std::string config_to_json(const RunConfig& c) {
  json j;
  j["experiment"] = c.experiment;
  j["model"] = {{"p", c.model.p}, {"omega", c.model.omega}};
  j["grid"] = {{"nx", c.grid.nx()}, {"ny", c.grid.ny()}, {"lx", c.grid.lx()}, {"ly", c.grid.ly()}};
  if (c.evolve) {
    const auto& e = *c.evolve;
    j["evolve"] = {{"dt", e.dt},
                   {"t_max", e.t_max},
                   {"splitting_order", e.splitting_order == Splitting::strang ? "strang" : "lie"},
                   {"diag_stride", e.diag_stride},
                   {"blowup_h12_factor", e.blowup_h12_factor},
                   {"dt_floor", e.dt_floor},
                   {"boundary_policy", e.boundary_policy == BoundaryPolicy::stop ? "stop" : "record"},
                   {"boundary_threshold", e.boundary_threshold},
                   {"adapt_threshold", e.adapt_threshold},
                   {"adaptive", e.adaptive},
                   {"max_phase_per_step", e.max_phase_per_step},
                   {"max_steps", e.max_steps},
                   {"dealias", e.dealias},
                   {"max_energy_drift", e.max_energy_drift}};
  }
  j["solver"] = {{"step_tol", c.solver.step_tol},
                 {"residual_tol", c.solver.residual_tol},
                 {"max_iter", c.solver.max_iter},
                 {"restarts", c.solver.restarts}};
  j["output_dir"] = c.output_dir.string();
  j["rng_seed"] = c.rng_seed;
  j["initial"] = {{"kind", c.initial.kind},       {"amplitude", c.initial.amplitude},
                  {"sigma_x", c.initial.sigma_x}, {"sigma_y", c.initial.sigma_y},
                  {"path", c.initial.path}};
  if (c.initial.lambda) j["initial"]["lambda"] = *c.initial.lambda;
  if (c.initial.delta) j["initial"]["delta"] = *c.initial.delta;
  j["snapshot_times"] = c.snapshot_times;
  j["quotient_restarts"] = c.quotient_restarts;
  j["enlarged_half_width"] = c.enlarged_half_width;
  j["decay"] = {{"x_window", {c.decay.x_window.first, c.decay.x_window.second}},
                {"y_window", {c.decay.y_window.first, c.decay.y_window.second}}};
  j["tube"] = c.tube;
  j["p_list"] = c.p_list;
  j["amplitude_list"] = c.amplitude_list;
  j["workers"] = c.workers;
  j["quad_tol"] = c.quad_tol;
  j["kernel_x"] = c.kernel_x;
  j["kernel_y"] = c.kernel_y;
  return j.dump(2) + "\n";
}

}  // namespace anls
