#include "anls/ground_state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "anls/random_fields.hpp"
#include "anls/spectral.hpp"
#include "nonlinearity.hpp"

namespace anls {
namespace {

// Physical L2 norm of a spectrum difference / spectrum, via Parseval.
double spectral_norm(const Grid2D& g, std::span<const Complex> s) {
  return std::sqrt(spectral::spectral_mass(g, s));
}

std::vector<double> mask_for(const Grid2D& g, const std::optional<bool>& dealias) {
  if (dealias.value_or(false)) return spectral::dealias_mask(g);
  return std::vector<double>(g.size(), 1.0);
}

GroundStateResult finish(Field profile, const ModelParams& params, double residual,
                         std::size_t iterations) {
  GroundStateResult r;
  r.profile = std::move(profile);
  r.omega = params.omega;
  r.p = params.p;
  r.residual_l2 = residual;
  r.iterations = iterations;
  r.norms = spectral_norms(r.profile, params.p);
  r.m_omega = j_omega(r.norms, params);
  r.pohozaev = pohozaev_ratios(r.norms, params);
  r.c_opt_estimate = gn_constant_from_ground_state(r);
  return r;
}

}  // namespace

Field normalize_phase_and_center(const Field& f) {
  const auto& g = f.grid();
  std::size_t best = 0;
  double peak = -1.0;
  const auto d = f.data();
  for (std::size_t n = 0; n < d.size(); ++n) {
    const double a = std::abs(d[n]);
    if (a > peak) {
      peak = a;
      best = n;
    }
  }
  const auto pi = static_cast<long>(best / g.ny());
  const auto pj = static_cast<long>(best % g.ny());
  Field out = roll(f, static_cast<long>(g.nx() / 2) - pi, static_cast<long>(g.ny() / 2) - pj);
  if (peak > 0.0) {
    const Complex phase = std::conj(d[best]) / peak;
    out *= phase;
  }
  return out;
}

GroundStateResult petviashvili_solve(const ModelParams& params, const Grid2D& grid,
                                     const Field& seed, const SolverOptions& opts) {
  params.validate_for_ground_state();
  require_finite(seed, "petviashvili_solve");
  if (!(seed.grid() == grid)) throw DomainError("petviashvili_solve: seed grid mismatch");
  if (seed.max_abs() == 0.0) throw DomainError("petviashvili_solve: seed must be nonzero");

  const double p = params.p;
  const double gamma = (p - 1.0) / (p - 2.0);
  const auto symbol = spectral::dispersion_symbol(grid);
  const auto mask = mask_for(grid, opts.dealias);
  const std::size_t size = grid.size();

  std::vector<double> op(size);
  for (std::size_t n = 0; n < size; ++n) op[n] = symbol[n] + params.omega;

  Field u = seed;
  Field best = seed;
  double best_residual = std::numeric_limits<double>::infinity();
  std::vector<double> factor_trace;
  std::vector<double> residual_trace;
  std::vector<Complex> spec_u(size);
  std::vector<Complex> spec_n(size);
  std::vector<Complex> diff(size);

  std::size_t it = 0;
  for (; it < opts.max_iter; ++it) {
    std::copy(u.data().begin(), u.data().end(), spec_u.begin());
    spectral::forward_inplace(grid, spec_u);
    detail::nonlinearity(u.data(), spec_n, p);
    spectral::forward_inplace(grid, spec_n);

    double lu_u = 0.0;
    double nu_u = 0.0;
    for (std::size_t n = 0; n < size; ++n) {
      diff[n] = op[n] * spec_u[n] - mask[n] * spec_n[n];
      lu_u += op[n] * std::norm(spec_u[n]);
      nu_u += (spec_n[n] * std::conj(spec_u[n])).real();
    }
    const double residual = spectral_norm(grid, diff) / spectral_norm(grid, spec_u);
    residual_trace.push_back(residual);
    if (residual < best_residual) {
      best_residual = residual;
      best = u;
    }

    const double factor = lu_u / nu_u;
    factor_trace.push_back(factor);
    if (!std::isfinite(factor) || factor <= 1e-12 || factor >= 1e12) {
      throw SolverDivergedError("petviashvili_solve: stabilising factor left (0, inf) at iteration " +
                                    std::to_string(it),
                                std::move(factor_trace), std::move(residual_trace));
    }

    const double scale = std::pow(factor, gamma);
    for (std::size_t n = 0; n < size; ++n) spec_n[n] *= scale * mask[n] / op[n];
    spectral::inverse_inplace(grid, spec_n);

    double change = 0.0;
    double norm_new = 0.0;
    auto ud = u.data();
    for (std::size_t n = 0; n < size; ++n) {
      change += std::norm(spec_n[n] - ud[n]);
      norm_new += std::norm(spec_n[n]);
      ud[n] = spec_n[n];
    }
    if (!u.all_finite()) {
      throw SolverDivergedError("petviashvili_solve: iterate became non-finite",
                                std::move(factor_trace), std::move(residual_trace));
    }
    if (std::sqrt(change / norm_new) < opts.step_tol) {
      ++it;
      break;
    }
  }

  // Final residual of the returned iterate.
  std::copy(u.data().begin(), u.data().end(), spec_u.begin());
  spectral::forward_inplace(grid, spec_u);
  detail::nonlinearity(u.data(), spec_n, p);
  spectral::forward_inplace(grid, spec_n);
  for (std::size_t n = 0; n < size; ++n) diff[n] = op[n] * spec_u[n] - mask[n] * spec_n[n];
  const double residual = spectral_norm(grid, diff) / spectral_norm(grid, spec_u);
  if (residual < best_residual) {
    best_residual = residual;
    best = u;
  }

  if (!(best_residual < opts.residual_tol)) {
    throw NotConvergedError("petviashvili_solve: residual " + std::to_string(best_residual) +
                                " above tolerance after " + std::to_string(it) + " iterations",
                            normalize_phase_and_center(best), best_residual, it);
  }
  return finish(normalize_phase_and_center(best), params, best_residual, it);
}

GroundStateSearch ground_state_search(const ModelParams& params, const Grid2D& grid,
                                      std::size_t restarts, std::uint64_t rng_seed,
                                      const SolverOptions& opts) {
  if (restarts == 0) throw DomainError("ground_state_search: need at least one restart");
  Rng rng(rng_seed);
  GroundStateSearch search;
  bool have_best = false;
  for (std::size_t r = 0; r < restarts; ++r) {
    Field seed = gaussian(grid);
    if (r > 0) {
      Field noise = band_limited_noise(grid, rng);
      noise *= 0.2;
      seed += noise;
    }
    try {
      auto result = petviashvili_solve(params, grid, seed, opts);
      search.j_values.push_back(result.m_omega);
      if (!have_best || result.m_omega < search.best.m_omega) {
        search.best = std::move(result);
        have_best = true;
      }
    } catch (const Error&) {
      ++search.failures;
    }
  }
  if (!have_best) throw NotConvergedError("ground_state_search: no restart converged",
                                          gaussian(grid), std::numeric_limits<double>::infinity(),
                                          0);
  const auto [lo, hi] = std::minmax_element(search.j_values.begin(), search.j_values.end());
  search.discrepancy = (*hi - *lo) > 1e-6 * std::abs(*lo);
  return search;
}

ConstrainedMinimum gradient_flow_solve(double c, double p, const Grid2D& grid, const Field& seed,
                                       const GradientFlowOptions& opts) {
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("gradient_flow_solve: mass must be positive");
  if (!(p > 2.0 && p < kMassCriticalExponent)) {
    throw DomainError("gradient_flow_solve: constrained minimisation needs 2 < p < 14/3");
  }
  require_finite(seed, "gradient_flow_solve");
  if (!(seed.grid() == grid)) throw DomainError("gradient_flow_solve: seed grid mismatch");
  const double seed_mass = mass(seed);
  if (!(seed_mass > 0.0)) throw DomainError("gradient_flow_solve: seed must be nonzero");

  const auto symbol = spectral::dispersion_symbol(grid);
  const auto mask = mask_for(grid, opts.dealias);
  const std::size_t size = grid.size();
  std::vector<double> precond(size);
  for (std::size_t n = 0; n < size; ++n) precond[n] = 1.0 / (opts.preconditioner_shift + symbol[n]);

  Field u = seed;
  u *= std::sqrt(c / seed_mass);
  std::vector<Complex> spec_u(size);
  std::vector<Complex> spec_n(size);
  std::vector<Complex> grad(size);

  double residual = std::numeric_limits<double>::infinity();
  double best_residual = residual;
  Field best = u;
  double mu = 0.0;
  std::size_t it = 0;
  for (; it < opts.max_iter; ++it) {
    std::copy(u.data().begin(), u.data().end(), spec_u.begin());
    spectral::forward_inplace(grid, spec_u);
    detail::nonlinearity(u.data(), spec_n, p);
    spectral::forward_inplace(grid, spec_n);

    // grad = (-d_xx + d_yyyy) u - N(u); mu is its projection in the
    // preconditioned inner product.
    double num = 0.0;
    double den = 0.0;
    for (std::size_t n = 0; n < size; ++n) {
      grad[n] = symbol[n] * spec_u[n] - mask[n] * spec_n[n];
      num += precond[n] * (grad[n] * std::conj(spec_u[n])).real();
      den += precond[n] * std::norm(spec_u[n]);
    }
    mu = num / den;
    double r2 = 0.0;
    double u2 = 0.0;
    for (std::size_t n = 0; n < size; ++n) {
      grad[n] -= mu * spec_u[n];
      r2 += std::norm(grad[n]);
      u2 += std::norm(spec_u[n]);
    }
    residual = std::sqrt(r2 / u2);
    if (residual < best_residual) {
      best_residual = residual;
      best = u;
    }
    if (residual < opts.tol) break;

    for (std::size_t n = 0; n < size; ++n) spec_u[n] -= opts.time_step * precond[n] * grad[n];
    spectral::inverse_inplace(grid, spec_u);
    std::copy(spec_u.begin(), spec_u.end(), u.data().begin());
    if (!u.all_finite()) {
      throw SolverDivergedError("gradient_flow_solve: iterate became non-finite", {}, {});
    }
    u *= std::sqrt(c / mass(u));
  }

  if (!(best_residual < opts.tol)) {
    throw NotConvergedError("gradient_flow_solve: residual " + std::to_string(best_residual) +
                                " above tolerance",
                            normalize_phase_and_center(best), best_residual, it);
  }

  Field profile = normalize_phase_and_center(best);
  const auto n = spectral_norms(profile, p);
  ConstrainedMinimum out;
  out.mass_constraint = c;
  out.energy = energy(n, p);
  out.omega_c = (n.lp - n.dx_sq - n.dyy_sq) / c;
  ModelParams params{p, out.omega_c};
  out.result.profile = std::move(profile);
  out.result.omega = out.omega_c;
  out.result.p = p;
  out.result.residual_l2 = best_residual;
  out.result.iterations = it;
  out.result.norms = n;
  out.result.m_omega = j_omega(n, params);
  out.result.pohozaev = pohozaev_ratios(n, params);
  out.result.c_opt_estimate =
      out.omega_c > 0.0 ? gn_constant_from_ground_state(out.result) : std::nan("");
  return out;
}

double gn_constant_closed_form(double p, double w_l2_norm) {
  if (!(p > 2.0)) throw DomainError("gn_constant_closed_form: p must exceed 2");
  if (!(w_l2_norm > 0.0)) throw DomainError("gn_constant_closed_form: ||W||_2 must be positive");
  const double a = 3.0 * (p - 2.0) / 8.0;
  return p * std::pow(p + 6.0, a - 1.0) /
         (std::pow(2.0, (p - 2.0) / 4.0 - 2.0) * std::pow(p - 2.0, a) *
          std::pow(w_l2_norm, p - 2.0));
}

double unit_frequency_l2_norm(const GroundStateResult& result) {
  const double w = result.omega;
  const double p = result.p;
  if (!(w > 0.0)) throw DomainError("unit_frequency_l2_norm: omega must be positive");
  const double m = result.norms.mass > 0.0 ? result.norms.mass : mass(result.profile);
  // ||W||^2 = w^{3/4 - 2/(p-2)} ||u_w||^2
  return std::sqrt(std::pow(w, 0.75 - 2.0 / (p - 2.0)) * m);
}

double gn_constant_from_ground_state(const GroundStateResult& result) {
  return gn_constant_closed_form(result.p, unit_frequency_l2_norm(result));
}

double critical_mass_threshold(double c_opt) {
  if (!(c_opt > 0.0)) throw DomainError("critical_mass_threshold: C_opt must be positive");
  return std::pow(7.0 / (3.0 * c_opt), 3.0 / 8.0);
}

}  // namespace anls
