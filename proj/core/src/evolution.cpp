#include "anls/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "anls/errors.hpp"
#include "anls/spectral.hpp"
#include "nonlinearity.hpp"

namespace anls {

void EvolveConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("EvolveConfig: dt must be positive");
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw DomainError("EvolveConfig: t_max must be positive");
  if (!(dt < t_max)) throw DomainError("EvolveConfig: dt must be smaller than t_max");
  if (diag_stride == 0) throw DomainError("EvolveConfig: diag_stride must be positive");
  if (!(blowup_h12_factor > 1.0)) throw DomainError("EvolveConfig: blowup_h12_factor must exceed 1");
  if (!(dt_floor > 0.0)) throw DomainError("EvolveConfig: dt_floor must be positive");
  if (!(boundary_threshold > 0.0)) throw DomainError("EvolveConfig: boundary_threshold must be positive");
  if (!(adapt_threshold > 0.0)) throw DomainError("EvolveConfig: adapt_threshold must be positive");
  if (!(max_phase_per_step >= 0.0)) throw DomainError("EvolveConfig: max_phase_per_step must be >= 0");
  if (!(max_energy_drift >= 0.0)) throw DomainError("EvolveConfig: max_energy_drift must be >= 0");
}

const char* to_string(TrajectoryStatus s) noexcept {
  switch (s) {
    case TrajectoryStatus::completed: return "completed";
    case TrajectoryStatus::blowup_detected: return "blowup_detected";
    case TrajectoryStatus::boundary_contaminated: return "boundary_contaminated";
    case TrajectoryStatus::step_floor_reached: return "step_floor_reached";
  }
  return "unknown";
}

DiagnosticsRecord diagnose(const Field& psi, double t, const ModelParams& params) {
  const double p = params.p;
  const SpectralNorms n = spectral_norms(psi, p);
  DiagnosticsRecord r;
  r.t = t;
  r.mass = n.mass;
  r.energy = energy(n, p);
  r.q = q_functional(n, p);
  r.k = k_functional(n, p);
  r.virial = transverse_virial(psi).value;
  r.h12_norm = h12_norm(n);
  r.boundary_mass_fraction = n.mass > 0.0 ? boundary_mass_fraction(psi) : 0.0;
  r.dx_sq = n.dx_sq;
  r.lp = n.lp;
  r.virial_rate = n.mass > 0.0 ? virial_rate(psi) : 0.0;
  return r;
}

SplitStepper::SplitStepper(const Grid2D& grid, const ModelParams& params, const StepOptions& opts)
    : grid_(grid), params_(params), opts_(opts), symbol_(spectral::dispersion_symbol(grid)) {
  params_.validate();
  if (opts_.dealias) mask_ = spectral::dealias_mask(grid);
}

const std::vector<Complex>& SplitStepper::propagator(double t) {
  for (const auto& c : cache_) {
    if (c.t == t) return c.factor;
  }
  if (cache_.size() >= 4) cache_.erase(cache_.begin());
  Cached c;
  c.t = t;
  c.factor.resize(symbol_.size());
  for (std::size_t n = 0; n < symbol_.size(); ++n) {
    c.factor[n] = std::polar(mask_.empty() ? 1.0 : mask_[n], -t * symbol_[n]);
  }
  cache_.push_back(std::move(c));
  return cache_.back().factor;
}

void SplitStepper::linear(Field& psi, double t) {
  const auto& factor = propagator(t);
  auto d = psi.data();
  spectral::forward_inplace(grid_, d);
  for (std::size_t n = 0; n < d.size(); ++n) d[n] *= factor[n];
  spectral::inverse_inplace(grid_, d);
}

void SplitStepper::nonlinear(Field& psi, double dt) const {
  const double c = dt * opts_.nonlinear_coupling;
  if (c == 0.0) return;
  for (auto& z : psi.data()) z *= std::polar(1.0, c * detail::abs_pow_minus_two(z, params_.p));
}

void SplitStepper::strang(Field& psi, double dt) {
  linear(psi, 0.5 * dt);
  nonlinear(psi, dt);
  linear(psi, 0.5 * dt);
}

void SplitStepper::lie(Field& psi, double dt) {
  linear(psi, dt);
  nonlinear(psi, dt);
}

Field step_strang(const Field& psi, double dt, const ModelParams& params, const StepOptions& opts) {
  require_finite(psi, "step_strang");
  SplitStepper s(psi.grid(), params, opts);
  Field out = psi;
  s.strang(out, dt);
  if (!out.all_finite()) out.mark_post_blowup();
  return out;
}

Field step_lie(const Field& psi, double dt, const ModelParams& params, const StepOptions& opts) {
  require_finite(psi, "step_lie");
  SplitStepper s(psi.grid(), params, opts);
  Field out = psi;
  s.lie(out, dt);
  if (!out.all_finite()) out.mark_post_blowup();
  return out;
}

TrajectoryOutcome evolve(const Field& psi0, const EvolveConfig& config, const ModelParams& params,
                         const RecordObserver& observer) {
  config.validate();
  params.validate();
  require_finite(psi0, "evolve");
  if (mass(psi0) > 0.0 && boundary_mass_fraction(psi0) >= 1e-8) {
    throw PreconditionError("evolve: initial data is not localised (boundary mass fraction >= 1e-8)");
  }

  SplitStepper stepper(psi0.grid(), params, StepOptions{1.0, config.dealias});
  TrajectoryOutcome out;
  Field psi = psi0;
  Field trial = psi0;
  double t = 0.0;
  double dt = config.dt;
  auto record = [&]() {
    out.records.push_back(diagnose(psi, t, params));
    if (observer) observer(psi, out.records.back());
  };
  record();
  const double h0 = out.records.front().h12_norm;
  std::size_t since_record = 0;
  const double t_end = config.t_max * (1.0 - 1e-12);

  auto finish = [&](TrajectoryStatus status) {
    if (since_record != 0) record();
    out.status = status;
    out.t_final = t;
    out.final_state = psi;
    return out;
  };

  while (t < t_end) {
    if (out.steps >= config.max_steps) return finish(TrajectoryStatus::step_floor_reached);
    if (config.adaptive && config.max_phase_per_step > 0.0) {
      const double amp = detail::abs_pow_minus_two(Complex(psi.max_abs()), params.p);
      if (dt * amp > config.max_phase_per_step) {
        dt *= 0.5;
        ++out.dt_halvings;
        if (dt < config.dt_floor) {
          return finish(h12_norm(psi) >= 2.0 * h0 ? TrajectoryStatus::blowup_detected
                                                  : TrajectoryStatus::step_floor_reached);
        }
        continue;
      }
    }
    const double h = std::min(dt, config.t_max - t);
    std::copy(psi.data().begin(), psi.data().end(), trial.data().begin());
    if (config.splitting_order == Splitting::strang) {
      stepper.strang(trial, h);
    } else {
      stepper.lie(trial, h);
    }
    if (!trial.all_finite()) {
      out.non_finite = true;
      out.status = TrajectoryStatus::blowup_detected;
      out.t_final = t + h;
      out.final_state = trial;
      out.final_state.mark_post_blowup();
      return out;
    }
    if (config.adaptive) {
      const double m_old = psi.max_abs();
      if (m_old > 0.0 && std::abs(trial.max_abs() - m_old) > config.adapt_threshold * m_old) {
        dt *= 0.5;
        ++out.dt_halvings;
        if (dt < config.dt_floor) {
          const double h_now = h12_norm(psi);
          return finish(h_now >= 2.0 * h0 ? TrajectoryStatus::blowup_detected
                                          : TrajectoryStatus::step_floor_reached);
        }
        continue;
      }
    }
    std::swap(psi, trial);
    t = (h == config.t_max - t) ? config.t_max : t + h;
    ++out.steps;
    ++since_record;
    if (since_record == config.diag_stride || t >= t_end) {
      if (config.max_energy_drift > 0.0) {
        const auto r = diagnose(psi, t, params);
        if (std::abs(r.energy - out.records.front().energy) > config.max_energy_drift * h0 * h0) {
          out.resolution_lost_at = t;
          out.status = TrajectoryStatus::blowup_detected;
          out.t_final = out.records.back().t;
          out.final_state = psi;
          out.final_state.mark_post_blowup();
          return out;
        }
      }
      record();
      since_record = 0;
      const auto& r = out.records.back();
      if (h0 > 0.0 && r.h12_norm > config.blowup_h12_factor * h0) {
        return finish(TrajectoryStatus::blowup_detected);
      }
      if (r.boundary_mass_fraction > config.boundary_threshold) {
        if (!out.contaminated_at) out.contaminated_at = r.t;
        if (config.boundary_policy == BoundaryPolicy::stop) {
          return finish(TrajectoryStatus::boundary_contaminated);
        }
      }
    }
  }
  return finish(TrajectoryStatus::completed);
}

std::vector<double> virial_second_difference(const std::vector<DiagnosticsRecord>& records) {
  if (records.size() < 3) throw InsufficientDataError("virial: need at least 3 records");
  std::vector<double> d2;
  for (std::size_t i = 1; i + 1 < records.size(); ++i) {
    const auto& a = records[i - 1];
    const auto& b = records[i];
    const auto& c = records[i + 1];
    const double h1 = b.t - a.t;
    const double h2 = c.t - b.t;
    d2.push_back(2.0 * ((c.virial - b.virial) / h2 - (b.virial - a.virial) / h1) / (h1 + h2));
  }
  return d2;
}

VirialReport virial_check(const std::vector<DiagnosticsRecord>& records, const ModelParams& params) {
  if (records.size() < 3) throw InsufficientDataError("virial_check: need at least 3 records");
  const double spacing = records[1].t - records[0].t;
  if (!(spacing > 0.0)) throw PreconditionError("virial_check: record times must increase");
  for (std::size_t i = 1; i < records.size(); ++i) {
    const double h = records[i].t - records[i - 1].t;
    if (std::abs(h - spacing) > 1e-9 * spacing) {
      throw PreconditionError("virial_check: records are not uniformly spaced");
    }
  }
  const double p = params.p;
  VirialReport rep;
  rep.spacing = spacing;
  double scale = 0.0;
  double rate_scale = 0.0;
  for (std::size_t i = 1; i + 1 < records.size(); ++i) {
    const auto& r = records[i];
    rep.times.push_back(r.t);
    rep.second_difference.push_back(
        (records[i + 1].virial - 2.0 * r.virial + records[i - 1].virial) / (spacing * spacing));
    rep.identity.push_back(8.0 * r.dx_sq - 4.0 * (p - 2.0) / p * r.lp);
    scale = std::max(scale, std::abs(rep.identity.back()));
    rate_scale = std::max(rate_scale, std::abs(r.virial_rate));
  }
  double worst = 0.0;
  double worst_rate = 0.0;
  for (std::size_t i = 0; i < rep.identity.size(); ++i) {
    worst = std::max(worst, std::abs(rep.second_difference[i] - rep.identity[i]));
    const auto& r = records[i + 1];
    const double d1 = (records[i + 2].virial - records[i].virial) / (2.0 * spacing);
    worst_rate = std::max(worst_rate, std::abs(d1 - r.virial_rate));
  }
  rep.max_relative_discrepancy = scale > 0.0 ? worst / scale : worst;
  rep.first_derivative_discrepancy = rate_scale > 0.0 ? worst_rate / rate_scale : worst_rate;
  return rep;
}

}  // namespace anls
