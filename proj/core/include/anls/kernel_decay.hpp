#pragma once

#include <cstddef>
#include <utility>

#include "anls/ground_state.hpp"

namespace anls {

/// Envelope c0 z^{-1/3} exp(-c1 z^{4/3}) cos(c2 z^{4/3} - phi) fitted to the
/// tabulated H2(z, 1) on the tail of the table.
struct H2Asymptotics {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double phase = 0.0;
};

/// H2(z, 1) = 2 int_0^inf cos(2 pi z xi) exp(-xi^4) d xi. Tabulated once on
/// |z| <= 12 (spacing 1e-3, cubic interpolation); the fitted envelope beyond.
double h2_unit(double z);

const H2Asymptotics& h2_asymptotics();

/// Fundamental solution
///   K(x, y) = int_0^inf e^{-t} H1(x, t) H2(y, t) dt,
///   H1(x, t) = sqrt(pi / t) exp(-pi^2 x^2 / t),  H2(y, t) = t^{-1/4} H2(t^{-1/4} y, 1).
/// Absolute error at most quad_tol; AccuracyError otherwise. (0, 0) is rejected.
double kernel_eval(double x, double y, double quad_tol = 1e-10);

struct DecayFitOptions {
  std::pair<double, double> x_window{3.0, 8.0};
  std::pair<double, double> y_window{3.0, 8.0};
};

struct DecayFit {
  /// log|u(x,0)| ~ a - sigma_x |x|
  double sigma_x = 0.0;
  /// log|u(0,y)| + log|y| / 3 ~ b - sigma_y |y|^{2/3}
  double sigma_y = 0.0;
  /// b in log|u(0,y)| ~ a + b log|y| - s |y|^{2/3}
  double prefactor_exponent = 0.0;
  std::pair<double, double> x_window;
  std::pair<double, double> y_window;
  double r_squared_x = 0.0;
  double r_squared_y = 0.0;
  /// log|u(0,y)| ~ a - s |y|, for comparison with the |y|^{2/3} law
  double sigma_y_exponential = 0.0;
  double r_squared_y_exponential = 0.0;
  std::size_t samples_x = 0;
  std::size_t samples_y = 0;
};

/// Fits the anisotropic decay law along the axes through the peak. A profile
/// at w != 1 is first mapped to w = 1.
DecayFit decay_fit(const GroundStateResult& result, const DecayFitOptions& opts = {});

}  // namespace anls
