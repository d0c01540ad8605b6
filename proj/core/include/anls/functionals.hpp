#pragma once

#include "anls/grid.hpp"

namespace anls {

/// The four integrals every functional is assembled from.
struct SpectralNorms {
  double dx_sq = 0.0;   ///< ||d_x f||_2^2
  double dyy_sq = 0.0;  ///< ||d_yy f||_2^2
  double mass = 0.0;    ///< ||f||_2^2
  double lp = 0.0;      ///< ||f||_p^p
};

/// One forward transform; derivative norms via Parseval.
SpectralNorms spectral_norms(const Field& f, double p);

/// sum |f|^p hx hy, |f| evaluated with hypot.
double lp_integral(const Field& f, double p);

struct FunctionalValues {
  double mass = 0.0;
  double energy = 0.0;
  double j_omega = 0.0;
  double i_omega = 0.0;
  double q = 0.0;
  double k = 0.0;
  double virial = 0.0;
  double h12_norm = 0.0;
};

FunctionalValues evaluate_functionals(const Field& f, const ModelParams& params);

// Each of these is assembled from SpectralNorms:
//   E   = 1/2 ||d_x f||^2 + 1/2 ||d_yy f||^2 - (1/p) ||f||_p^p
//   J_w = E + (w/2) M
//   I_w = ||d_x f||^2 + ||d_yy f||^2 + w M - ||f||_p^p
//   Q   = ||d_x f||^2 + ||d_yy f||^2 - 3(p-2)/(4p) ||f||_p^p
//   K   = 1/2 ||d_yy f||^2 - (p-2)/(8p) ||f||_p^p
double mass(const Field& f);
double energy(const Field& f, const ModelParams& params);
double j_omega(const Field& f, const ModelParams& params);
double i_omega(const Field& f, const ModelParams& params);
double q_functional(const Field& f, const ModelParams& params);
double k_functional(const Field& f, const ModelParams& params);

double energy(const SpectralNorms& n, double p);
double j_omega(const SpectralNorms& n, const ModelParams& params);
double i_omega(const SpectralNorms& n, const ModelParams& params);
double q_functional(const SpectralNorms& n, double p);
double k_functional(const SpectralNorms& n, double p);

/// ||d_x f|| + ||d_yy f|| + ||f||, the sum-of-norms H^{1,2} norm.
double h12_norm(const SpectralNorms& n);
double h12_norm(const Field& f);
/// sqrt(||d_x f||^2 + ||d_yy f||^2 + ||f||^2), an equivalent norm.
double h12_norm_root(const SpectralNorms& n);

/// Fraction of the mass inside the outer n/16 samples of the box.
enum class BoundaryAxes { x, y, both };
double boundary_mass_fraction(const Field& f, BoundaryAxes axes = BoundaryAxes::both);

/// Boundary-mass threshold above which the transverse virial is not trusted.
inline constexpr double kVirialBoundaryThreshold = 1e-8;

struct VirialEstimate {
  double value = 0.0;
  double boundary_mass_fraction = 0.0;  ///< along x only
  bool reliable = true;
};

/// V = int x^2 |f|^2 with x measured from the box centre.
VirialEstimate transverse_virial(const Field& f);

/// dV/dt along the flow: 4 Im int x (d_x f) conj(f).
double virial_rate(const Field& f);

/// Pohozaev residuals, each normalised by ||f||_p^p:
///   r1 = ||d_x f||^2 + ||d_yy f||^2 - 3(p-2)/(4p) ||f||_p^p
///   r2 = w ||f||^2 - (p+6)/(4p) ||f||_p^p
///   r3 = ||d_x f||^2 - 2 ||d_yy f||^2
struct PohozaevRatios {
  double r1 = 0.0;
  double r2 = 0.0;
  double r3 = 0.0;

  double max_abs() const noexcept;
};

PohozaevRatios pohozaev_ratios(const Field& f, const ModelParams& params);
PohozaevRatios pohozaev_ratios(const SpectralNorms& n, const ModelParams& params);

/// Gagliardo-Nirenberg quotient
///   ||f||_p^p / (||d_x f||^{(p-2)/2} ||d_yy f||^{(p-2)/4} ||f||_2^{(p+6)/4}),
/// the reciprocal of I(u). Its supremum is the optimal constant.
double gn_quotient(const Field& f, double p);
double gn_quotient(const SpectralNorms& n, double p);

// Scalings. All resample by band-limited (periodic sinc) interpolation on the
// same grid and throw SupportOverflowError when the rescaled field would no
// longer fit in the box.

struct ResampleOptions {
  /// Samples with |f| above support_tol * max|f| define the support.
  double support_tol = 1e-9;
};

/// amplitude * f(ax * x, ay * y) sampled on f's grid.
Field resample(const Field& f, double amplitude, double ax, double ay,
               const ResampleOptions& opts = {});

/// Band-limited interpolant of f evaluated on another grid; zero outside f's box.
Field resample_to_grid(const Field& f, const Grid2D& target, const ResampleOptions& opts = {});

/// u_lambda = lambda^{3/8} u(lambda^{1/2} x, lambda^{1/4} y); mass preserving.
Field scale_lambda(const Field& f, double lambda, const ResampleOptions& opts = {});
/// u_{mu,l1,l2} = mu u(l1 x, l2 y).
Field scale_aniso(const Field& f, double mu, double lambda1, double lambda2,
                  const ResampleOptions& opts = {});
/// u^lambda = lambda^{1/2} u(x, lambda y); mass preserving.
Field scale_ylambda(const Field& f, double lambda, const ResampleOptions& opts = {});

}  // namespace anls
