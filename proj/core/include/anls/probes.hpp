#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "anls/evolution.hpp"
#include "anls/ground_state.hpp"

namespace anls {

enum class Membership { in_G, in_B, neither };

const char* to_string(Membership m) noexcept;

struct Classification {
  Membership membership = Membership::neither;
  double j_omega = 0.0;
  double q = 0.0;
  double k = 0.0;
  double m_omega = 0.0;
  /// J_w < m_w and Q < 0, whatever the sign of K.
  bool in_B1 = false;
};

/// in_G iff J_w < m_w and Q > 0; in_B iff J_w < m_w, Q < 0 and K > 0.
Classification classify_initial_datum(const Field& psi0, const ModelParams& params, double m_omega);

struct SignInvarianceReport {
  int initial_sign = 0;
  bool sign_preserved = true;
  /// Boundary contamination ended the run before t_max.
  bool inconclusive = false;
  TrajectoryStatus status = TrajectoryStatus::completed;
  double t_final = 0.0;
  std::vector<double> times;
  std::vector<double> q_values;
  std::optional<double> first_violation;
};

/// Evolves psi0 and tracks sign Q(psi(t)) at every record. Requires
/// J_w(psi0) < m_w and Q(psi0) != 0.
SignInvarianceReport sign_invariance_probe(const Field& psi0, const ModelParams& params,
                                           double m_omega, const EvolveConfig& config);

/// inf over phase and periodic grid shifts of ||psi - e^{i theta} u(. - xi)||_{H^{1,2}}
/// (sum form). Shift by cross-correlation peak, phase in closed form.
double orbital_distance(const Field& psi, const Field& u);

struct OrbitalReport {
  double delta = 0.0;
  double sup_distance = 0.0;
  std::vector<double> times;
  std::vector<double> distances;
  TrajectoryStatus status = TrajectoryStatus::completed;
  double t_final = 0.0;
  /// Blowup at subcritical p.
  bool anomalous = false;
  /// Distance exceeded the tube width (or blowup) before t_max.
  bool escaped = false;
  std::optional<double> escape_time;
};

struct OrbitalProbeOptions {
  double delta = 1e-2;
  /// Initial data scale_lambda(u, lambda) * (1 + delta * noise).
  double lambda = 1.0;
  double tube = 0.1;
  std::uint64_t rng_seed = 1;
};

/// Evolves a perturbed ground state and tracks its distance to the orbit of u.
OrbitalReport orbital_stability_probe(const GroundStateResult& ground_state,
                                      const OrbitalProbeOptions& opts, const EvolveConfig& config);

}  // namespace anls
