#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "anls/functionals.hpp"
#include "anls/grid.hpp"

namespace anls {

enum class Splitting { lie, strang };

/// What evolve() does once the boundary strips hold more than
/// boundary_threshold of the mass.
enum class BoundaryPolicy {
  stop,    ///< end with status boundary_contaminated
  record,  ///< note the time and keep integrating on the torus
};

struct EvolveConfig {
  double dt = 1e-3;
  double t_max = 1.0;
  Splitting splitting_order = Splitting::strang;
  std::size_t diag_stride = 10;
  double blowup_h12_factor = 1e4;
  double dt_floor = 1e-12;
  BoundaryPolicy boundary_policy = BoundaryPolicy::stop;
  double boundary_threshold = 1e-6;
  /// Halve dt when max|psi| changes by more than this fraction in one step.
  double adapt_threshold = 0.1;
  bool adaptive = true;
  /// When positive, also halve dt until dt * max|psi|^{p-2} stays below this.
  double max_phase_per_step = 0.0;
  std::size_t max_steps = 50'000'000;
  /// Apply the 2/3 mask inside the linear substep.
  bool dealias = false;
  /// When positive, |E(t) - E(0)| above this multiple of the initial squared
  /// H^{1,2} norm counts as loss of resolution: the record is dropped and the
  /// run ends as blowup_detected.
  double max_energy_drift = 0.0;

  void validate() const;
};

struct DiagnosticsRecord {
  double t = 0.0;
  double mass = 0.0;
  double energy = 0.0;
  double q = 0.0;
  double k = 0.0;
  double virial = 0.0;
  double h12_norm = 0.0;
  double boundary_mass_fraction = 0.0;
  // Extra columns kept for the virial checks.
  double dx_sq = 0.0;
  double lp = 0.0;
  double virial_rate = 0.0;
};

DiagnosticsRecord diagnose(const Field& psi, double t, const ModelParams& params);

enum class TrajectoryStatus { completed, blowup_detected, boundary_contaminated, step_floor_reached };

const char* to_string(TrajectoryStatus s) noexcept;

struct TrajectoryOutcome {
  TrajectoryStatus status = TrajectoryStatus::completed;
  double t_final = 0.0;
  std::vector<DiagnosticsRecord> records;
  Field final_state;
  std::size_t steps = 0;
  std::size_t dt_halvings = 0;
  /// First record time with boundary mass above the threshold.
  std::optional<double> contaminated_at;
  /// Set when the last step produced NaN/Inf.
  bool non_finite = false;
  /// Time of the dropped record that exceeded max_energy_drift.
  std::optional<double> resolution_lost_at;
};

struct StepOptions {
  /// Multiplies |psi|^{p-2} in the nonlinear phase; 0 gives the free flow.
  double nonlinear_coupling = 1.0;
  bool dealias = false;
};

/// Split-step integrator with cached propagators for the last step size used.
class SplitStepper {
 public:
  SplitStepper(const Grid2D& grid, const ModelParams& params, const StepOptions& opts = {});

  void strang(Field& psi, double dt);
  void lie(Field& psi, double dt);

 private:
  void linear(Field& psi, double t);
  void nonlinear(Field& psi, double dt) const;
  const std::vector<Complex>& propagator(double t);

  Grid2D grid_;
  ModelParams params_;
  StepOptions opts_;
  std::vector<double> symbol_;
  std::vector<double> mask_;
  struct Cached {
    double t = 0.0;
    std::vector<Complex> factor;
  };
  std::vector<Cached> cache_;
};

/// linear(dt/2), nonlinear(dt), linear(dt/2).
Field step_strang(const Field& psi, double dt, const ModelParams& params, const StepOptions& opts = {});
/// linear(dt), nonlinear(dt).
Field step_lie(const Field& psi, double dt, const ModelParams& params, const StepOptions& opts = {});

/// Called with the state behind every stored record, the initial one included.
using RecordObserver = std::function<void(const Field&, const DiagnosticsRecord&)>;

TrajectoryOutcome evolve(const Field& psi0, const EvolveConfig& config, const ModelParams& params,
                         const RecordObserver& observer = {});

struct VirialReport {
  /// max |D2 V - (8 ||d_x psi||^2 - 4(p-2)/p ||psi||_p^p)| over interior records,
  /// relative to the largest |identity| value.
  double max_relative_discrepancy = 0.0;
  /// Same comparison for the centred first difference against 4 Im int x psi_x conj(psi).
  double first_derivative_discrepancy = 0.0;
  double spacing = 0.0;
  std::vector<double> times;
  std::vector<double> second_difference;
  std::vector<double> identity;
};

VirialReport virial_check(const std::vector<DiagnosticsRecord>& records, const ModelParams& params);

/// Second derivative of V at interior records by the three-point formula
/// (spacing may vary). Entry i belongs to records[i + 1].
std::vector<double> virial_second_difference(const std::vector<DiagnosticsRecord>& records);

}  // namespace anls
