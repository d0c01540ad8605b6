#include "anls/probes.hpp"

#include <cmath>

#include "anls/random_fields.hpp"
#include "anls/spectral.hpp"

namespace anls {

const char* to_string(Membership m) noexcept {
  switch (m) {
    case Membership::in_G: return "in_G";
    case Membership::in_B: return "in_B";
    case Membership::neither: return "neither";
  }
  return "unknown";
}

Classification classify_initial_datum(const Field& psi0, const ModelParams& params, double m_omega) {
  params.validate_for_ground_state();
  require_finite(psi0, "classify_initial_datum");
  const auto n = spectral_norms(psi0, params.p);
  Classification c;
  c.j_omega = j_omega(n, params);
  c.q = q_functional(n, params.p);
  c.k = k_functional(n, params.p);
  c.m_omega = m_omega;
  const bool below = c.j_omega < m_omega;
  c.in_B1 = below && c.q < 0.0;
  if (below && c.q > 0.0) {
    c.membership = Membership::in_G;
  } else if (c.in_B1 && c.k > 0.0) {
    c.membership = Membership::in_B;
  }
  return c;
}

SignInvarianceReport sign_invariance_probe(const Field& psi0, const ModelParams& params,
                                           double m_omega, const EvolveConfig& config) {
  const auto c = classify_initial_datum(psi0, params, m_omega);
  if (!(c.j_omega < m_omega)) throw PreconditionError("sign_invariance_probe: J_w(psi0) >= m_w");
  const double lp = lp_integral(psi0, params.p);
  if (std::abs(c.q) <= 1e-10 * lp) throw PreconditionError("sign_invariance_probe: Q(psi0) = 0");

  SignInvarianceReport rep;
  rep.initial_sign = c.q > 0.0 ? 1 : -1;
  const auto out = evolve(psi0, config, params);
  for (const auto& r : out.records) {
    rep.times.push_back(r.t);
    rep.q_values.push_back(r.q);
    const int s = r.q > 0.0 ? 1 : (r.q < 0.0 ? -1 : 0);
    if (s != rep.initial_sign && !rep.first_violation) {
      rep.first_violation = r.t;
      rep.sign_preserved = false;
    }
  }
  rep.status = out.status;
  rep.t_final = out.t_final;
  rep.inconclusive = out.status == TrajectoryStatus::boundary_contaminated;
  return rep;
}

double orbital_distance(const Field& psi, const Field& u) {
  if (!(psi.grid() == u.grid())) throw DomainError("orbital_distance: grid mismatch");
  const auto& g = psi.grid();
  auto a = spectral::forward(psi);
  auto b = spectral::forward(u);
  for (std::size_t n = 0; n < a.size(); ++n) a[n] *= std::conj(b[n]);
  spectral::inverse_inplace(g, a);
  // a(s) = sum_x psi(x) conj(u(x - s))
  std::size_t best = 0;
  for (std::size_t n = 1; n < a.size(); ++n) {
    if (std::abs(a[n]) > std::abs(a[best])) best = n;
  }
  const auto di = static_cast<long>(best / g.ny());
  const auto dj = static_cast<long>(best % g.ny());
  Field shifted = roll(u, di, dj);
  const double mag = std::abs(a[best]);
  if (mag > 0.0) shifted *= a[best] / mag;
  return h12_norm(psi - shifted);
}

OrbitalReport orbital_stability_probe(const GroundStateResult& ground_state,
                                      const OrbitalProbeOptions& opts, const EvolveConfig& config) {
  const ModelParams params{ground_state.p, ground_state.omega};
  params.validate_for_ground_state();
  if (!(opts.delta >= 0.0)) throw DomainError("orbital_stability_probe: delta must be >= 0");
  const Field& u = ground_state.profile;
  Field psi0 = opts.lambda == 1.0 ? u : scale_lambda(u, opts.lambda);
  if (opts.delta > 0.0) {
    Rng rng(opts.rng_seed);
    const Field noise = band_limited_noise(u.grid(), rng);
    auto d = psi0.data();
    const auto nd = noise.data();
    for (std::size_t n = 0; n < d.size(); ++n) d[n] *= 1.0 + opts.delta * nd[n].real();
  }

  OrbitalReport rep;
  rep.delta = opts.delta;
  const auto out = evolve(psi0, config, params, [&](const Field& psi, const DiagnosticsRecord& r) {
    const double dist = orbital_distance(psi, u);
    rep.times.push_back(r.t);
    rep.distances.push_back(dist);
    rep.sup_distance = std::max(rep.sup_distance, dist);
    if (dist > opts.tube && !rep.escape_time) rep.escape_time = r.t;
  });
  rep.status = out.status;
  rep.t_final = out.t_final;
  rep.anomalous = params.p < kMassCriticalExponent && out.status == TrajectoryStatus::blowup_detected;
  rep.escaped = rep.escape_time.has_value() || out.status == TrajectoryStatus::blowup_detected;
  return rep;
}

}  // namespace anls
