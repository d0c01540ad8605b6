#include "anls/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <thread>

#include "anls/ground_state.hpp"
#include "anls/probes.hpp"
#include "anls/random_fields.hpp"
#include "anls/snapshot.hpp"
#include "json.hpp"

namespace anls {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kVersion = "0.1.0";

class Artifacts {
 public:
  explicit Artifacts(fs::path dir) : dir_(std::move(dir)) {}

  void text(const std::string& name, const std::string& content) {
    const fs::path path = dir_ / name;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw OutputDirError("cannot write " + path.string());
    out << content;
    if (!out) throw OutputDirError("write failed: " + path.string());
    names_.push_back(name);
  }

  void json_file(const std::string& name, const json& j) { text(name, j.dump(2) + "\n"); }

  void snapshot(const std::string& name, const Field& f) {
    try {
      write_snapshot(dir_ / name, f);
    } catch (const Error& e) {
      throw OutputDirError(e.what());
    }
    names_.push_back(name);
  }

  const std::vector<std::string>& names() const { return names_; }

 private:
  fs::path dir_;
  std::vector<std::string> names_;
};

void prepare_output_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw OutputDirError("cannot create output directory " + dir.string());
  }
  const fs::path probe = dir / ".anls_write_probe";
  {
    std::ofstream out(probe, std::ios::trunc);
    if (!out) throw OutputDirError("output directory is not writable: " + dir.string());
  }
  fs::remove(probe, ec);
}

SolverOptions solver_options(const RunConfig& c) {
  SolverOptions o;
  o.step_tol = c.solver.step_tol;
  o.residual_tol = c.solver.residual_tol;
  o.max_iter = c.solver.max_iter;
  return o;
}

EvolveConfig evolve_config(const RunConfig& c) { return c.evolve.value_or(EvolveConfig{}); }

GroundStateResult solve_ground_state(const RunConfig& c, const ModelParams& params) {
  const auto search =
      ground_state_search(params, c.grid, c.solver.restarts, c.rng_seed, solver_options(c));
  return search.best;
}

json pohozaev_json(const PohozaevRatios& r) { return {{"r1", r.r1}, {"r2", r.r2}, {"r3", r.r3}}; }

json ground_state_json(const GroundStateResult& r) {
  return {{"omega", r.omega},
          {"p", r.p},
          {"residual_l2", r.residual_l2},
          {"m_omega", r.m_omega},
          {"pohozaev", pohozaev_json(r.pohozaev)},
          {"c_opt_estimate", r.c_opt_estimate},
          {"iterations", r.iterations},
          {"mass", r.norms.mass},
          {"dx_sq", r.norms.dx_sq},
          {"dyy_sq", r.norms.dyy_sq},
          {"lp", r.norms.lp}};
}

json outcome_json(const TrajectoryOutcome& o) {
  json j{{"status", to_string(o.status)},
         {"t_final", o.t_final},
         {"steps", o.steps},
         {"dt_halvings", o.dt_halvings},
         {"records", o.records.size()},
         {"non_finite", o.non_finite}};
  j["contaminated_at"] = o.contaminated_at ? json(*o.contaminated_at) : json(nullptr);
  j["resolution_lost_at"] = o.resolution_lost_at ? json(*o.resolution_lost_at) : json(nullptr);
  return j;
}

std::string csv_row(std::initializer_list<double> values) {
  std::string row;
  for (double v : values) {
    if (!row.empty()) row += ',';
    row += format_double(v);
  }
  return row + '\n';
}

Field initial_field(const RunConfig& c, std::ostream& summary) {
  const auto& in = c.initial;
  if (in.kind == "zero") return Field(c.grid);
  if (in.kind == "gaussian") return gaussian(c.grid, in.amplitude, in.sigma_x, in.sigma_y);
  if (in.kind == "snapshot") {
    Field f = read_snapshot(in.path);
    if (!(f.grid() == c.grid)) throw ConfigError("initial.path", "snapshot grid differs from the configured grid");
    return f;
  }
  const auto gs = solve_ground_state(c, c.model);
  summary << "ground state: residual " << format_double(gs.residual_l2) << ", m_omega "
          << format_double(gs.m_omega) << "\n";
  Field f = in.lambda.value_or(1.0) == 1.0 ? gs.profile : scale_lambda(gs.profile, *in.lambda);
  const double delta = in.delta.value_or(0.0);
  if (delta > 0.0) {
    Rng rng(c.rng_seed);
    const Field noise = band_limited_noise(c.grid, rng);
    auto d = f.data();
    for (std::size_t n = 0; n < d.size(); ++n) d[n] *= 1.0 + delta * noise.data()[n].real();
  }
  return f;
}

void run_ground_state(const RunConfig& c, Artifacts& art, std::ostream& out) {
  const auto search =
      ground_state_search(c.model, c.grid, c.solver.restarts, c.rng_seed, solver_options(c));
  const auto& r = search.best;
  const auto sym = symmetry_report(r);
  json j = ground_state_json(r);
  j["restarts"] = {{"j_values", search.j_values},
                   {"failures", search.failures},
                   {"discrepancy", search.discrepancy}};
  j["symmetry"] = {{"x_reflection_asymmetry", sym.x_reflection_asymmetry},
                   {"y_reflection_asymmetry", sym.y_reflection_asymmetry}};
  art.snapshot("ground_state.anls", r.profile);
  art.json_file("ground_state.json", j);
  out << "ground state p=" << format_double(r.p) << " omega=" << format_double(r.omega) << "\n"
      << "  residual_l2    " << format_double(r.residual_l2) << "\n"
      << "  iterations     " << r.iterations << "\n"
      << "  m_omega        " << format_double(r.m_omega) << "\n"
      << "  mass           " << format_double(r.norms.mass) << "\n"
      << "  pohozaev       " << format_double(r.pohozaev.r1) << " " << format_double(r.pohozaev.r2)
      << " " << format_double(r.pohozaev.r3) << "\n"
      << "  c_opt_estimate " << format_double(r.c_opt_estimate) << "\n";
  if (search.discrepancy) out << "  warning: restarts disagree on J_omega by more than 1e-6\n";
}

void run_evolve(const RunConfig& c, Artifacts& art, std::ostream& out) {
  const Field psi0 = initial_field(c, out);
  const auto cfg = evolve_config(c);
  std::vector<double> pending = c.snapshot_times;
  std::sort(pending.begin(), pending.end());
  std::size_t next = 0;
  std::size_t counter = 0;
  const auto outcome = evolve(psi0, cfg, c.model, [&](const Field& psi, const DiagnosticsRecord& r) {
    while (next < pending.size() && r.t >= pending[next]) {
      art.snapshot("snapshot_" + std::to_string(counter++) + ".anls", psi);
      ++next;
    }
  });
  art.text("diagnostics.csv", diagnostics_csv(outcome.records));
  if (!outcome.final_state.post_blowup()) art.snapshot("final.anls", outcome.final_state);
  art.json_file("trajectory.json", outcome_json(outcome));
  const auto& a = outcome.records.front();
  const auto& b = outcome.records.back();
  out << "evolve p=" << format_double(c.model.p) << ": " << to_string(outcome.status) << " at t="
      << format_double(outcome.t_final) << " after " << outcome.steps << " steps\n"
      << "  mass   " << format_double(a.mass) << " -> " << format_double(b.mass) << "\n"
      << "  energy " << format_double(a.energy) << " -> " << format_double(b.energy) << "\n"
      << "  h12    " << format_double(a.h12_norm) << " -> " << format_double(b.h12_norm) << "\n";
}

void run_gn_constant(const RunConfig& c, Artifacts& art, std::ostream& out) {
  const ModelParams params{c.model.p, 1.0};
  const auto w = solve_ground_state(c, params);
  const double c_opt = gn_constant_from_ground_state(w);
  const double quotient_w = gn_quotient(w.norms, params.p);
  json j{{"p", params.p},
         {"w_l2_norm", unit_frequency_l2_norm(w)},
         {"c_opt", c_opt},
         {"quotient_of_w", quotient_w},
         {"residual_l2", w.residual_l2}};
  out << "gn-constant p=" << format_double(params.p) << "\n"
      << "  ||W||_2       " << format_double(unit_frequency_l2_norm(w)) << "\n"
      << "  C_opt         " << format_double(c_opt) << "\n"
      << "  quotient(W)   " << format_double(quotient_w) << "\n";
  if (std::abs(params.p - kMassCriticalExponent) < 1e-3) {
    const double c_star = critical_mass_threshold(c_opt);
    j["c_star"] = c_star;
    out << "  c*            " << format_double(c_star) << "\n";
  }
  if (c.quotient_restarts > 0) {
    QuotientSearchOptions qo;
    qo.rng_seed = c.rng_seed;
    const auto q = gn_quotient_maximize(params.p, c.grid, c.quotient_restarts, qo);
    j["quotient_maximum"] = q.best;
    j["quotient_per_restart"] = q.per_restart;
    out << "  max quotient  " << format_double(q.best) << " over " << c.quotient_restarts
        << " restarts\n";
  }
  art.json_file("gn_constant.json", j);
}

void run_virial_check(const RunConfig& c, Artifacts& art, std::ostream& out) {
  const Field psi0 = initial_field(c, out);
  auto cfg = evolve_config(c);
  cfg.diag_stride = 1;
  cfg.adaptive = false;
  const auto coarse = evolve(psi0, cfg, c.model);
  const auto rep = virial_check(coarse.records, c.model);
  auto fine_cfg = cfg;
  fine_cfg.dt = 0.5 * cfg.dt;
  const auto fine = evolve(psi0, fine_cfg, c.model);
  const auto rep_fine = virial_check(fine.records, c.model);
  const double ratio = rep.max_relative_discrepancy / rep_fine.max_relative_discrepancy;

  std::string csv = "t,second_difference,identity,first_difference,virial_rate\n";
  for (std::size_t i = 0; i < rep.times.size(); ++i) {
    const auto& r = coarse.records;
    const double d1 = (r[i + 2].virial - r[i].virial) / (2.0 * rep.spacing);
    csv += csv_row({rep.times[i], rep.second_difference[i], rep.identity[i], d1, r[i + 1].virial_rate});
  }
  art.text("virial.csv", csv);
  art.text("diagnostics.csv", diagnostics_csv(coarse.records));
  art.json_file("virial.json", {{"dt", cfg.dt},
                                {"max_relative_discrepancy", rep.max_relative_discrepancy},
                                {"first_derivative_discrepancy", rep.first_derivative_discrepancy},
                                {"half_step_max_relative_discrepancy", rep_fine.max_relative_discrepancy},
                                {"convergence_ratio", ratio},
                                {"status", to_string(coarse.status)}});
  out << "virial-check p=" << format_double(c.model.p) << " dt=" << format_double(cfg.dt) << "\n"
      << "  max relative discrepancy " << format_double(rep.max_relative_discrepancy) << "\n"
      << "  at dt/2                  " << format_double(rep_fine.max_relative_discrepancy) << "\n"
      << "  ratio                    " << format_double(ratio) << "\n"
      << "  first-derivative check   " << format_double(rep.first_derivative_discrepancy) << "\n";
}

json decay_json(const DecayFit& f) {
  return {{"sigma_x", f.sigma_x},
          {"sigma_y", f.sigma_y},
          {"prefactor_exponent", f.prefactor_exponent},
          {"x_window", {f.x_window.first, f.x_window.second}},
          {"y_window", {f.y_window.first, f.y_window.second}},
          {"r_squared", {f.r_squared_x, f.r_squared_y}},
          {"sigma_y_exponential", f.sigma_y_exponential},
          {"r_squared_y_exponential", f.r_squared_y_exponential},
          {"samples", {f.samples_x, f.samples_y}}};
}

void run_decay_fit(const RunConfig& c, Artifacts& art, std::ostream& out) {
  const ModelParams params{c.model.p, 1.0};
  const auto gs = solve_ground_state(c, params);
  const auto fit = decay_fit(gs, c.decay);
  json j{{"ground_state", ground_state_json(gs)}, {"fit", decay_json(fit)}};
  const auto& g = gs.profile.grid();
  std::string ax = "x,u\n";
  for (std::size_t i = 0; i < g.nx(); ++i) ax += csv_row({g.x(i), gs.profile(i, g.ny() / 2).real()});
  std::string ay = "y,u\n";
  for (std::size_t k = 0; k < g.ny(); ++k) ay += csv_row({g.y(k), gs.profile(g.nx() / 2, k).real()});
  art.text("profile_x.csv", ax);
  art.text("profile_y.csv", ay);
  out << "decay-fit p=" << format_double(params.p) << "\n"
      << "  sigma_x " << format_double(fit.sigma_x) << " (r^2 " << format_double(fit.r_squared_x) << ")\n"
      << "  sigma_y " << format_double(fit.sigma_y) << " (r^2 " << format_double(fit.r_squared_y) << ")\n"
      << "  pure exponential in y: r^2 " << format_double(fit.r_squared_y_exponential) << "\n"
      << "  free prefactor exponent " << format_double(fit.prefactor_exponent) << "\n";
  if (c.enlarged_half_width > 0.0) {
    RunConfig big = c;
    big.grid = Grid2D(c.grid.nx(), c.grid.ny(), 2.0 * c.enlarged_half_width, 2.0 * c.enlarged_half_width);
    const auto gs2 = solve_ground_state(big, params);
    const auto fit2 = decay_fit(gs2, c.decay);
    const double dx = std::abs(fit2.sigma_x - fit.sigma_x) / std::abs(fit.sigma_x);
    const double dy = std::abs(fit2.sigma_y - fit.sigma_y) / std::abs(fit.sigma_y);
    j["enlarged"] = {{"half_width", c.enlarged_half_width},
                     {"fit", decay_json(fit2)},
                     {"relative_change_sigma_x", dx},
                     {"relative_change_sigma_y", dy}};
    out << "  enlarged box: sigma_x change " << format_double(dx) << ", sigma_y change "
        << format_double(dy) << "\n";
  }
  art.json_file("decay_fit.json", j);
}

void run_probe(const RunConfig& c, Artifacts& art, std::ostream& out, bool instability) {
  const auto gs = solve_ground_state(c, c.model);
  OrbitalProbeOptions po;
  po.delta = c.initial.delta.value_or(1e-2);
  po.lambda = c.initial.lambda.value_or(instability ? 1.05 : 1.0);
  po.tube = c.tube;
  po.rng_seed = c.rng_seed;
  const auto rep = orbital_stability_probe(gs, po, evolve_config(c));
  std::string csv = "t,distance\n";
  for (std::size_t i = 0; i < rep.times.size(); ++i) csv += csv_row({rep.times[i], rep.distances[i]});
  art.text("distance.csv", csv);
  json j{{"delta", rep.delta},
         {"lambda", po.lambda},
         {"tube", po.tube},
         {"sup_distance", rep.sup_distance},
         {"status", to_string(rep.status)},
         {"t_final", rep.t_final},
         {"anomalous", rep.anomalous},
         {"escaped", rep.escaped}};
  j["escape_time"] = rep.escape_time ? json(*rep.escape_time) : json(nullptr);
  art.json_file(instability ? "instability.json" : "stability.json", j);
  out << (instability ? "instability-probe" : "stability-probe") << " p=" << format_double(c.model.p)
      << " delta=" << format_double(rep.delta) << " lambda=" << format_double(po.lambda) << "\n"
      << "  status       " << to_string(rep.status) << " at t=" << format_double(rep.t_final) << "\n"
      << "  sup distance " << format_double(rep.sup_distance) << "\n"
      << "  escaped      " << (rep.escaped ? "yes" : "no") << "\n";
  if (rep.anomalous) out << "  anomalous: blowup at subcritical p\n";
}

void run_blowup_scan(const RunConfig& c, Artifacts& art, std::ostream& out) {
  const auto cells = blowup_scan(c.p_list, c.amplitude_list, c);
  std::string csv =
      "p,amplitude,status,t_final,energy0,mass0,membership,j_omega,q,k,in_B1,m_omega,error\n";
  for (std::size_t n = 0; n < cells.size(); ++n) {
    const auto& s = cells[n];
    csv += format_double(s.p) + ',' + format_double(s.amplitude) + ',' + s.status + ',' +
           format_double(s.t_final) + ',' + format_double(s.energy0) + ',' + format_double(s.mass0) +
           ',' + s.membership + ',' + format_double(s.j_omega) + ',' + format_double(s.q) + ',' +
           format_double(s.k) + ',' + (s.in_B1 ? "1" : "0") + ',' + format_double(s.m_omega) + ',' +
           s.error + '\n';
    if (s.error.empty()) art.text("cells/cell_" + std::to_string(n) + ".csv", diagnostics_csv(s.records));
  }
  art.text("phase_table.csv", csv);
  out << "blowup-scan: " << cells.size() << " cells\n";
  for (const auto& s : cells) {
    out << "  p=" << format_double(s.p) << " A=" << format_double(s.amplitude) << " E0="
        << format_double(s.energy0) << " -> " << (s.error.empty() ? s.status : "error: " + s.error)
        << "\n";
  }
}

void run_symmetry_report(const RunConfig& c, Artifacts& art, std::ostream& out) {
  const auto gs = solve_ground_state(c, c.model);
  const auto sym = symmetry_report(gs);
  const double p = c.model.p;
  const auto n0 = spectral_norms(gs.profile, p);
  const auto ny = spectral_norms(fourier_rearrange(gs.profile, Axis::y), p);
  const auto nx = spectral_norms(fourier_rearrange(gs.profile, Axis::x), p);
  art.json_file("symmetry.json",
                {{"p", p},
                 {"x_reflection_asymmetry", sym.x_reflection_asymmetry},
                 {"y_reflection_asymmetry", sym.y_reflection_asymmetry},
                 {"rearranged_y", {{"dyy_sq", ny.dyy_sq}, {"lp", ny.lp}, {"mass", ny.mass}}},
                 {"rearranged_x", {{"dx_sq", nx.dx_sq}, {"lp", nx.lp}, {"mass", nx.mass}}},
                 {"original", {{"dx_sq", n0.dx_sq}, {"dyy_sq", n0.dyy_sq}, {"lp", n0.lp}, {"mass", n0.mass}}}});
  out << "symmetry-report p=" << format_double(p) << "\n"
      << "  x-reflection asymmetry " << format_double(sym.x_reflection_asymmetry) << "\n"
      << "  y-reflection asymmetry " << format_double(sym.y_reflection_asymmetry) << "\n";
}

void run_kernel_eval(const RunConfig& c, Artifacts& art, std::ostream& out) {
  std::vector<double> xs = c.kernel_x;
  std::vector<double> ys = c.kernel_y;
  if (xs.empty()) {
    for (int k = 1; k <= 10; ++k) {
      xs.push_back(0.5 * k);
      ys.push_back(0.0);
    }
    for (int k = 1; k <= 12; ++k) {
      xs.push_back(0.0);
      ys.push_back(0.5 * k);
    }
  }
  std::string csv = "x,y,K\n";
  for (std::size_t k = 0; k < xs.size(); ++k) {
    csv += csv_row({xs[k], ys[k], kernel_eval(xs[k], ys[k], c.quad_tol)});
  }
  std::string h2 = "z,H2\n";
  for (int k = 0; k <= 120; ++k) h2 += csv_row({0.1 * k, h2_unit(0.1 * k)});
  const auto& a = h2_asymptotics();
  art.text("kernel.csv", csv);
  art.text("h2.csv", h2);
  art.json_file("h2_asymptotics.json", {{"c0", a.c0}, {"c1", a.c1}, {"c2", a.c2}, {"phase", a.phase}});
  out << "kernel-eval: " << xs.size() << " points, quad_tol " << format_double(c.quad_tol) << "\n"
      << "  H2 tail fit c1=" << format_double(a.c1) << " c2=" << format_double(a.c2) << "\n";
}

}  // namespace

std::vector<ScanCell> blowup_scan(const std::vector<double>& p_list,
                                  const std::vector<double>& amplitude_list, const RunConfig& config) {
  if (p_list.empty() || amplitude_list.empty()) throw DomainError("blowup_scan: empty parameter list");
  const auto cfg = evolve_config(config);
  cfg.validate();

  // m_omega per exponent, for the membership column.
  std::map<double, std::optional<double>> m_omega;
  for (double p : p_list) {
    if (m_omega.count(p)) continue;
    try {
      m_omega[p] = solve_ground_state(config, ModelParams{p, config.model.omega}).m_omega;
    } catch (const Error&) {
      m_omega[p] = std::nullopt;
    }
  }

  std::vector<ScanCell> cells(p_list.size() * amplitude_list.size());
  for (std::size_t i = 0; i < p_list.size(); ++i) {
    for (std::size_t k = 0; k < amplitude_list.size(); ++k) {
      auto& s = cells[i * amplitude_list.size() + k];
      s.p = p_list[i];
      s.amplitude = amplitude_list[k];
    }
  }

  auto work = [&](ScanCell& s) {
    try {
      const ModelParams params{s.p, config.model.omega};
      const Field psi0 = gaussian(config.grid, s.amplitude);
      const auto n = spectral_norms(psi0, s.p);
      s.energy0 = energy(n, s.p);
      s.mass0 = n.mass;
      if (const auto& m = m_omega.at(s.p)) {
        const auto cls = classify_initial_datum(psi0, params, *m);
        s.membership = to_string(cls.membership);
        s.j_omega = cls.j_omega;
        s.q = cls.q;
        s.k = cls.k;
        s.in_B1 = cls.in_B1;
        s.m_omega = *m;
      } else {
        s.membership = "unknown";
      }
      const auto outcome = evolve(psi0, cfg, params);
      s.status = to_string(outcome.status);
      s.t_final = outcome.t_final;
      s.records = outcome.records;
    } catch (const std::exception& e) {
      s.error = e.what();
      std::replace(s.error.begin(), s.error.end(), ',', ';');
      std::replace(s.error.begin(), s.error.end(), '\n', ' ');
    }
  };

  std::size_t workers = config.workers;
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, cells.size());
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < cells.size(); k = next++) work(cells[k]);
    });
  }
  for (auto& t : pool) t.join();
  return cells;
}

RunReport run(const RunConfig& config, std::ostream& summary) {
  RunReport report;
  report.output_dir = config.output_dir.empty() ? default_output_root() / config.experiment : config.output_dir;
  prepare_output_dir(report.output_dir);
  Artifacts art(report.output_dir);

  static const std::map<std::string, std::function<void(const RunConfig&, Artifacts&, std::ostream&)>>
      table{
          {"ground-state", run_ground_state},
          {"evolve", run_evolve},
          {"gn-constant", run_gn_constant},
          {"virial-check", run_virial_check},
          {"decay-fit", run_decay_fit},
          {"stability-probe",
           [](const RunConfig& c, Artifacts& a, std::ostream& o) { run_probe(c, a, o, false); }},
          {"instability-probe",
           [](const RunConfig& c, Artifacts& a, std::ostream& o) { run_probe(c, a, o, true); }},
          {"blowup-scan", run_blowup_scan},
          {"symmetry-report", run_symmetry_report},
          {"kernel-eval", run_kernel_eval},
      };
  const auto it = table.find(config.experiment);
  if (it == table.end()) throw UnknownExperimentError("unknown experiment \"" + config.experiment + "\"");
  it->second(config, art, summary);

  json manifest{{"version", kVersion},
                {"experiment", config.experiment},
                {"config", json::parse(config_to_json(config))},
                {"artifacts", art.names()}};
  art.json_file("manifest.json", manifest);
  report.artifacts = art.names();
  summary << "artifacts in " << report.output_dir.string() << "\n";
  return report;
}

ExitCode classify_error(const std::exception& e, std::string& error_json) {
  ExitCode code = ExitCode::failure;
  std::string kind = "error";
  json j;
  if (const auto* ce = dynamic_cast<const ConfigError*>(&e)) {
    code = ExitCode::invalid_config;
    kind = "invalid_config";
    j["where"] = ce->where();
  } else if (dynamic_cast<const UnknownExperimentError*>(&e)) {
    code = ExitCode::unknown_experiment;
    kind = "unknown_experiment";
    j["known"] = experiment_names();
  } else if (dynamic_cast<const OutputDirError*>(&e)) {
    code = ExitCode::unwritable_output;
    kind = "unwritable_output";
  } else if (dynamic_cast<const NotConvergedError*>(&e) || dynamic_cast<const SolverDivergedError*>(&e) ||
             dynamic_cast<const AccuracyError*>(&e)) {
    code = ExitCode::solver_failure;
    kind = "solver_failure";
  } else if (dynamic_cast<const DomainError*>(&e) || dynamic_cast<const SupportOverflowError*>(&e) ||
             dynamic_cast<const PreconditionError*>(&e)) {
    code = ExitCode::invalid_config;
    kind = "invalid_input";
  }
  j["error"] = kind;
  j["message"] = e.what();
  j["exit_code"] = static_cast<int>(code);
  error_json = j.dump();
  return code;
}

}  // namespace anls
