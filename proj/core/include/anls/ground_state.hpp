#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "anls/errors.hpp"
#include "anls/functionals.hpp"
#include "anls/grid.hpp"

namespace anls {

struct SolverOptions {
  /// Iteration stops once the relative L2 change between iterates drops below this.
  double step_tol = 1e-10;
  /// Relative residual required for a converged result.
  double residual_tol = 1e-8;
  std::size_t max_iter = 5000;
  /// 2/3-rule truncation of the nonlinearity (off by default). When on, the
  /// residual is measured against the truncated equation.
  std::optional<bool> dealias;
};

struct GroundStateResult {
  Field profile;
  double omega = 0.0;
  double p = 0.0;
  /// ||-u_xx + u_yyyy + w u - |u|^{p-2} u||_2 / ||u||_2
  double residual_l2 = 0.0;
  /// J_w(profile)
  double m_omega = 0.0;
  PohozaevRatios pohozaev;
  /// Closed-form optimal GN constant evaluated with this profile.
  double c_opt_estimate = 0.0;
  std::size_t iterations = 0;
  SpectralNorms norms;
};

/// Budget exhausted without reaching residual_tol; carries the best iterate seen.
class NotConvergedError : public Error {
 public:
  NotConvergedError(const std::string& what, Field best, double residual, std::size_t iterations)
      : Error(what), best_(std::move(best)), residual_(residual), iterations_(iterations) {}

  const Field& best_iterate() const noexcept { return best_; }
  double residual() const noexcept { return residual_; }
  std::size_t iterations() const noexcept { return iterations_; }

 private:
  Field best_;
  double residual_;
  std::size_t iterations_;
};

/// Solves -u_xx + u_yyyy + w u = |u|^{p-2} u by Petviashvili iteration
///
///   u_{n+1}^ = S_n^g * N(u_n)^ / (kx^2 + ky^4 + w),
///   S_n = <(-d_xx + d_yyyy + w) u_n, u_n> / <N(u_n), u_n>,  g = (p-1)/(p-2).
///
/// The returned profile is translated so its peak sits at the box centre and
/// rotated so the peak value is real and positive.
GroundStateResult petviashvili_solve(const ModelParams& params, const Grid2D& grid,
                                     const Field& seed, const SolverOptions& opts = {});

/// Best of several Petviashvili runs: the default Gaussian seed plus seeds
/// perturbed by low-wavenumber noise.
struct GroundStateSearch {
  GroundStateResult best;
  std::vector<double> j_values;  ///< J_w reached by each converged restart
  std::size_t failures = 0;
  /// Converged restarts disagree on J_w by more than 1e-6 (relative).
  bool discrepancy = false;
};

GroundStateSearch ground_state_search(const ModelParams& params, const Grid2D& grid,
                                      std::size_t restarts, std::uint64_t rng_seed,
                                      const SolverOptions& opts = {});

struct GradientFlowOptions {
  /// Relative residual of the constrained Euler-Lagrange equation.
  double tol = 1e-9;
  std::size_t max_iter = 20000;
  /// Pseudo-time step of the preconditioned flow.
  double time_step = 0.6;
  /// Preconditioner (shift + kx^2 + ky^4)^{-1}.
  double preconditioner_shift = 1.0;
  std::optional<bool> dealias;
};

struct ConstrainedMinimum {
  /// profile, p and residual; omega holds the recovered multiplier.
  GroundStateResult result;
  double mass_constraint = 0.0;
  double energy = 0.0;
  /// (||u||_p^p - ||d_x u||^2 - ||d_yy u||^2) / c
  double omega_c = 0.0;
};

/// Minimises E on {||v||_2^2 = c} by a preconditioned normalised gradient
/// flow. Requires 2 < p < 14/3.
ConstrainedMinimum gradient_flow_solve(double c, double p, const Grid2D& grid, const Field& seed,
                                       const GradientFlowOptions& opts = {});

/// Optimal anisotropic GN constant for exponent p given ||W||_2 of the w = 1
/// ground state W:
///   p (p+6)^{3(p-2)/8 - 1} / (2^{(p-2)/4 - 2} (p-2)^{3(p-2)/8} ||W||_2^{p-2}).
double gn_constant_closed_form(double p, double w_l2_norm);

/// ||W||_2 of the w = 1 ground state obtained from a ground state at any w via
/// W(x, y) = w^{-1/(p-2)} u(w^{-1/2} x, w^{-1/4} y).
double unit_frequency_l2_norm(const GroundStateResult& result);

double gn_constant_from_ground_state(const GroundStateResult& result);

/// Mass threshold c* = (7 / (3 C_opt))^{3/8} of the mass-critical problem.
double critical_mass_threshold(double c_opt);

struct QuotientMaximum {
  double best = 0.0;
  std::vector<double> per_restart;
  Field best_field;
};

struct QuotientSearchOptions {
  std::size_t max_iter = 400;
  std::uint64_t rng_seed = 20240611;
};

/// Best-effort lower bound on C_opt: preconditioned gradient ascent of the GN
/// quotient from random smooth seeds.
QuotientMaximum gn_quotient_maximize(double p, const Grid2D& grid, std::size_t restarts,
                                     const QuotientSearchOptions& opts = {});

/// Runs the same ascent from a given starting field.
double gn_quotient_ascend(Field& f, double p, std::size_t max_iter);

enum class Axis { x, y };

/// Replaces the Fourier moduli on every spectral line parallel to `axis` by
/// their symmetric-decreasing rearrangement about zero wavenumber and drops
/// the phases.
Field fourier_rearrange(const Field& f, Axis axis);

struct SymmetryReport {
  /// max|u(x,y) - u(-x,y)| / max|u|
  double x_reflection_asymmetry = 0.0;
  /// max|u(x,y) - u(x,-y)| / max|u|
  double y_reflection_asymmetry = 0.0;
  std::size_t peak_i = 0;
  std::size_t peak_j = 0;
};

/// Measures reflection asymmetry after moving the peak of |u| to the box centre.
SymmetryReport symmetry_report(const Field& f);
SymmetryReport symmetry_report(const GroundStateResult& result);

/// Rolls the peak of |f| to (nx/2, ny/2) and makes the peak value real positive.
Field normalize_phase_and_center(const Field& f);

}  // namespace anls
