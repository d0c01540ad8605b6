#include "anls/kernel_decay.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_fit.h>
#include <gsl/gsl_integration.h>
#include <gsl/gsl_multifit.h>

#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>
#include <vector>

namespace anls {
namespace {

constexpr double kTableMax = 12.0;
constexpr double kTableStep = 1e-3;
constexpr double kPi = std::numbers::pi;

// Trapezoid sum of exp(2 pi i z w - w^4) along Im w = a/2, where a^3 = pi z / 2
// puts the line through the two dominant saddles, so no cancellation occurs.
double h2_direct(double z) {
  const double a = std::cbrt(0.5 * kPi * z);
  const double eta = 0.5 * a;
  const double h = 0.005;
  auto term = [&](double xi) {
    const Complex w(xi, eta);
    const Complex w2 = w * w;
    return std::exp(Complex(0.0, 2.0 * kPi * z) * w - w2 * w2);
  };
  double sum = term(0.0).real();
  double peak = std::abs(sum);
  for (std::size_t k = 1;; ++k) {
    const double xi = static_cast<double>(k) * h;
    const Complex f = term(xi);
    const double mag = std::abs(f);
    peak = std::max(peak, mag);
    sum += 2.0 * f.real();
    if (xi > 2.0 * a + 1.0 && mag < 1e-40 * peak) break;
  }
  return h * sum;
}

struct H2Table {
  std::vector<double> values;
  H2Asymptotics asym;

  H2Table() {
    const auto n = static_cast<std::size_t>(std::lround(kTableMax / kTableStep)) + 3;
    values.resize(n);
    for (std::size_t k = 0; k < n; ++k) values[k] = h2_direct(static_cast<double>(k) * kTableStep);
    fit_tail();
  }

  double at(long k) const { return values[static_cast<std::size_t>(std::labs(k))]; }

  double interpolate(double z) const {
    const double u = z / kTableStep;
    const auto k = static_cast<long>(std::floor(u));
    const double s = u - static_cast<double>(k);
    const double f0 = at(k - 1);
    const double f1 = at(k);
    const double f2 = at(k + 1);
    const double f3 = at(k + 2);
    return -s * (s - 1.0) * (s - 2.0) / 6.0 * f0 + (s + 1.0) * (s - 1.0) * (s - 2.0) / 2.0 * f1 -
           (s + 1.0) * s * (s - 2.0) / 2.0 * f2 + (s + 1.0) * s * (s - 1.0) / 6.0 * f3;
  }

  void fit_tail() {
    // Zeros of the tail in s = z^{4/3}: c2 s_k - phase = pi/2 + k pi.
    std::vector<double> zeros;
    const auto first = static_cast<std::size_t>(6.0 / kTableStep);
    const auto last = static_cast<std::size_t>(kTableMax / kTableStep);
    for (std::size_t k = first; k < last; ++k) {
      const double a = values[k];
      const double b = values[k + 1];
      if ((a < 0.0) != (b < 0.0)) {
        const double z = kTableStep * (static_cast<double>(k) + a / (a - b));
        zeros.push_back(std::pow(z, 4.0 / 3.0));
      }
    }
    std::vector<double> idx(zeros.size());
    for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = static_cast<double>(k);
    double c0 = 0.0, c1 = 0.0, cov00 = 0.0, cov01 = 0.0, cov11 = 0.0, sumsq = 0.0;
    gsl_fit_linear(idx.data(), 1, zeros.data(), 1, zeros.size(), &c0, &c1, &cov00, &cov01, &cov11,
                   &sumsq);
    asym.c2 = kPi / c1;
    asym.phase = asym.c2 * c0 - 0.5 * kPi;

    // Envelope at the crests between consecutive zeros, where |cos| = 1.
    std::vector<double> s_mid;
    std::vector<double> log_env;
    for (std::size_t k = 0; k + 1 < zeros.size(); ++k) {
      const double s = 0.5 * (zeros[k] + zeros[k + 1]);
      const double z = std::pow(s, 0.75);
      s_mid.push_back(s);
      log_env.push_back(std::log(std::abs(interpolate(z))) + std::log(z) / 3.0);
    }
    gsl_fit_linear(s_mid.data(), 1, log_env.data(), 1, s_mid.size(), &c0, &c1, &cov00, &cov01,
                   &cov11, &sumsq);
    asym.c0 = std::exp(c0);
    asym.c1 = -c1;

    // The zeros fix the phase only modulo pi; match the sign at the last crest.
    asym.phase = std::remainder(asym.phase, 2.0 * kPi);
    const double s = s_mid.back();
    const double z = std::pow(s, 0.75);
    if ((std::cos(asym.c2 * s - asym.phase) < 0.0) != (interpolate(z) < 0.0)) {
      asym.phase = std::remainder(asym.phase + kPi, 2.0 * kPi);
    }
  }

  double operator()(double z) const {
    z = std::abs(z);
    if (z <= kTableMax) return interpolate(z);
    const double s = std::pow(z, 4.0 / 3.0);
    return asym.c0 * std::pow(z, -1.0 / 3.0) * std::exp(-asym.c1 * s) *
           std::cos(asym.c2 * s - asym.phase);
  }
};

const H2Table& table() {
  static const H2Table t;
  return t;
}

struct KernelArgs {
  double x;
  double y;
  const H2Table* h2;
};

double kernel_integrand(double s, void* raw) {
  const auto* a = static_cast<const KernelArgs*>(raw);
  const double t = std::exp(s);
  const double q = std::pow(t, -0.25);
  const double h1 = std::sqrt(kPi / t) * std::exp(-kPi * kPi * a->x * a->x / t);
  return std::exp(-t) * h1 * q * (*a->h2)(a->y * q) * t;
}

struct Workspace {
  gsl_integration_workspace* w;
  explicit Workspace(std::size_t n) : w(gsl_integration_workspace_alloc(n)) {}
  ~Workspace() { gsl_integration_workspace_free(w); }
  Workspace(const Workspace&) = delete;
  Workspace& operator=(const Workspace&) = delete;
};

struct Regression {
  double intercept = 0.0;
  double slope = 0.0;
  double r_squared = 0.0;
};

Regression linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  Regression r;
  double cov00 = 0.0, cov01 = 0.0, cov11 = 0.0, sumsq = 0.0;
  gsl_fit_linear(x.data(), 1, y.data(), 1, x.size(), &r.intercept, &r.slope, &cov00, &cov01,
                 &cov11, &sumsq);
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(y.size());
  double sst = 0.0;
  for (double v : y) sst += (v - mean) * (v - mean);
  r.r_squared = sst > 0.0 ? 1.0 - sumsq / sst : 0.0;
  return r;
}

std::once_flag gsl_handler_once;

void quiet_gsl() {
  std::call_once(gsl_handler_once, [] { gsl_set_error_handler_off(); });
}

}  // namespace

double h2_unit(double z) { return table()(z); }

const H2Asymptotics& h2_asymptotics() { return table().asym; }

double kernel_eval(double x, double y, double quad_tol) {
  if (!std::isfinite(x) || !std::isfinite(y)) throw DomainError("kernel_eval: non-finite point");
  if (x == 0.0 && y == 0.0) throw DomainError("kernel_eval: K is singular at the origin");
  if (!(quad_tol > 0.0)) throw DomainError("kernel_eval: quad_tol must be positive");
  quiet_gsl();

  const double t_cut = std::log(10.0 / quad_tol);
  const double t_lo = std::max(kPi * kPi * x * x / 200.0, std::pow(std::abs(y) / kTableMax, 4.0));
  if (!(t_lo < t_cut)) return 0.0;

  KernelArgs args{x, y, &table()};
  gsl_function fn{&kernel_integrand, &args};
  constexpr std::size_t limit = 2000;
  Workspace ws(limit);
  double result = 0.0;
  double abserr = 0.0;
  const int status = gsl_integration_qag(&fn, std::log(t_lo), std::log(t_cut), quad_tol, 0.0, limit,
                                         GSL_INTEG_GAUSS41, ws.w, &result, &abserr);
  if (status != GSL_SUCCESS && !(abserr <= quad_tol)) {
    throw AccuracyError("kernel_eval: tolerance not reached (" + std::string(gsl_strerror(status)) + ")",
                        result, abserr);
  }
  return result;
}

DecayFit decay_fit(const GroundStateResult& result, const DecayFitOptions& opts) {
  const double w = result.omega;
  const double p = result.p;
  if (!(w > 0.0)) throw DomainError("decay_fit: omega must be positive");
  quiet_gsl();
  Field u = w == 1.0 ? result.profile
                     : scale_aniso(result.profile, std::pow(w, -1.0 / (p - 2.0)), std::pow(w, -0.5),
                                   std::pow(w, -0.25));
  u = normalize_phase_and_center(u);
  const auto& g = u.grid();
  const double peak = u.max_abs();
  const std::size_t ci = g.nx() / 2;
  const std::size_t cj = g.ny() / 2;
  auto usable = [&](double v) { return v > 1e-12 && v < 1e-2 * peak; };
  auto inside = [](double r, const std::pair<double, double>& win) {
    return r >= win.first && r <= win.second;
  };

  DecayFit fit;
  fit.x_window = opts.x_window;
  fit.y_window = opts.y_window;

  std::vector<double> xs, lx;
  for (std::size_t i = 0; i < g.nx(); ++i) {
    const double r = std::abs(g.x(i));
    const double v = std::abs(u(i, cj));
    if (inside(r, opts.x_window) && usable(v)) {
      xs.push_back(r);
      lx.push_back(std::log(v));
    }
  }
  std::vector<double> ys, ly;
  for (std::size_t j = 0; j < g.ny(); ++j) {
    const double r = std::abs(g.y(j));
    const double v = std::abs(u(ci, j));
    if (inside(r, opts.y_window) && usable(v)) {
      ys.push_back(r);
      ly.push_back(std::log(v));
    }
  }
  fit.samples_x = xs.size();
  fit.samples_y = ys.size();
  if (xs.size() < 10 || ys.size() < 10) {
    throw InsufficientDataError("decay_fit: fewer than 10 usable samples in a fit window (x: " +
                                std::to_string(xs.size()) + ", y: " + std::to_string(ys.size()) + ")");
  }

  const auto rx = linear_fit(xs, lx);
  fit.sigma_x = -rx.slope;
  fit.r_squared_x = rx.r_squared;

  std::vector<double> s23(ys.size()), shifted(ys.size());
  for (std::size_t k = 0; k < ys.size(); ++k) {
    s23[k] = std::pow(ys[k], 2.0 / 3.0);
    shifted[k] = ly[k] + std::log(ys[k]) / 3.0;
  }
  const auto ry = linear_fit(s23, shifted);
  fit.sigma_y = -ry.slope;
  fit.r_squared_y = ry.r_squared;

  const auto re = linear_fit(ys, ly);
  fit.sigma_y_exponential = -re.slope;
  fit.r_squared_y_exponential = re.r_squared;

  const std::size_t n = ys.size();
  std::unique_ptr<gsl_matrix, decltype(&gsl_matrix_free)> X(gsl_matrix_alloc(n, 3), &gsl_matrix_free);
  std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)> Y(gsl_vector_alloc(n), &gsl_vector_free);
  std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)> c(gsl_vector_alloc(3), &gsl_vector_free);
  std::unique_ptr<gsl_matrix, decltype(&gsl_matrix_free)> cov(gsl_matrix_alloc(3, 3), &gsl_matrix_free);
  std::unique_ptr<gsl_multifit_linear_workspace, decltype(&gsl_multifit_linear_free)> mw(
      gsl_multifit_linear_alloc(n, 3), &gsl_multifit_linear_free);
  for (std::size_t k = 0; k < n; ++k) {
    gsl_matrix_set(X.get(), k, 0, 1.0);
    gsl_matrix_set(X.get(), k, 1, std::log(ys[k]));
    gsl_matrix_set(X.get(), k, 2, s23[k]);
    gsl_vector_set(Y.get(), k, ly[k]);
  }
  double chisq = 0.0;
  gsl_multifit_linear(X.get(), Y.get(), c.get(), cov.get(), &chisq, mw.get());
  fit.prefactor_exponent = gsl_vector_get(c.get(), 1);
  return fit;
}

}  // namespace anls
