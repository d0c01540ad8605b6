#include "anls/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "anls/errors.hpp"
#include "anls/spectral.hpp"

namespace anls {
namespace {

double abs_pow(const Complex& z, double p) {
  const double n2 = std::norm(z);
  if (p == 4.0) return n2 * n2;
  if (p == 6.0) return n2 * n2 * n2;
  if (p == 3.0) return std::abs(z) * n2;
  if (p == 5.0) return std::abs(z) * n2 * n2;
  return std::pow(std::abs(z), p);
}

// Support half-extent along each axis: the largest |x| (|y|) carrying a sample
// above tol * max|f|.
struct Extent {
  double x = 0.0;
  double y = 0.0;
};

Extent support_extent(const Field& f, double tol) {
  const auto& g = f.grid();
  const double threshold = tol * f.max_abs();
  Extent e;
  for (std::size_t i = 0; i < g.nx(); ++i) {
    for (std::size_t j = 0; j < g.ny(); ++j) {
      if (std::abs(f(i, j)) > threshold) {
        e.x = std::max(e.x, std::abs(g.x(i)));
        e.y = std::max(e.y, std::abs(g.y(j)));
      }
    }
  }
  return e;
}

// Periodic sinc for even n: sin(n t/2) / (n tan(t/2)), the band-limited
// interpolation kernel whose Nyquist mode is taken as a cosine.
double periodic_sinc(double theta, std::size_t n) {
  const double half = 0.5 * theta;
  const double t = std::tan(half);
  const double nd = static_cast<double>(n);
  if (std::abs(t) < 1e-13) {
    const double c = std::cos(half);
    return std::cos(nd * half) * c * c;
  }
  return std::sin(nd * half) / (nd * t);
}

// Row a maps the source samples to the value at target coordinate coords[a];
// rows for coordinates outside the source box are zero.
std::vector<double> interpolation_matrix(std::span<const double> coords, std::size_t n,
                                         double length) {
  const double h = length / static_cast<double>(n);
  std::vector<double> a(coords.size() * n, 0.0);
  for (std::size_t r = 0; r < coords.size(); ++r) {
    const double c = coords[r];
    if (c < -0.5 * length - 1e-12 * length || c > 0.5 * length + 1e-12 * length) continue;
    for (std::size_t s = 0; s < n; ++s) {
      const double xs = -0.5 * length + static_cast<double>(s) * h;
      a[r * n + s] = periodic_sinc(2.0 * std::numbers::pi * (c - xs) / length, n);
    }
  }
  return a;
}

bool is_identity_axis(std::span<const double> coords, std::size_t n, double length) {
  if (coords.size() != n) return false;
  const double h = length / static_cast<double>(n);
  for (std::size_t s = 0; s < n; ++s) {
    if (coords[s] != -0.5 * length + static_cast<double>(s) * h) return false;
  }
  return true;
}

// out(a, b) = sum_{i,j} Ax(a,i) f(i,j) Ay(b,j) on separable target coordinates.
Field interpolate(const Field& f, const Grid2D& target, std::span<const double> xs,
                  std::span<const double> ys) {
  const auto& g = f.grid();
  const bool id_x = is_identity_axis(xs, g.nx(), g.lx());
  const bool id_y = is_identity_axis(ys, g.ny(), g.ly());

  // Along y first: tmp is nx x ny_target.
  std::vector<Complex> tmp;
  const std::size_t nyt = ys.size();
  if (id_y) {
    tmp.assign(f.data().begin(), f.data().end());
  } else {
    const auto ay = interpolation_matrix(ys, g.ny(), g.ly());
    tmp.assign(g.nx() * nyt, Complex{});
    for (std::size_t i = 0; i < g.nx(); ++i) {
      const Complex* row = &f.data()[g.index(i, 0)];
      for (std::size_t b = 0; b < nyt; ++b) {
        const double* w = &ay[b * g.ny()];
        double re = 0.0;
        double im = 0.0;
        for (std::size_t j = 0; j < g.ny(); ++j) {
          re += w[j] * row[j].real();
          im += w[j] * row[j].imag();
        }
        tmp[i * nyt + b] = Complex(re, im);
      }
    }
  }

  const std::size_t nxt = xs.size();
  std::vector<Complex> out;
  if (id_x) {
    out = std::move(tmp);
  } else {
    const auto ax = interpolation_matrix(xs, g.nx(), g.lx());
    out.assign(nxt * nyt, Complex{});
    for (std::size_t a = 0; a < nxt; ++a) {
      Complex* orow = &out[a * nyt];
      for (std::size_t i = 0; i < g.nx(); ++i) {
        const double w = ax[a * g.nx() + i];
        if (w == 0.0) continue;
        const Complex* trow = &tmp[i * nyt];
        for (std::size_t b = 0; b < nyt; ++b) orow[b] += w * trow[b];
      }
    }
  }
  return Field(target, std::move(out));
}

}  // namespace

SpectralNorms spectral_norms(const Field& f, double p) {
  require_finite(f, "spectral_norms");
  const auto& g = f.grid();
  const auto s = spectral::forward(f);
  const auto kx = g.kx();
  const auto ky = g.ky();
  const std::size_t nyquist = g.nx() / 2;
  double ax = 0.0;
  double ayy = 0.0;
  double m = 0.0;
  for (std::size_t j = 0; j < g.nx(); ++j) {
    const double kx2 = (j == nyquist) ? 0.0 : kx[j] * kx[j];
    for (std::size_t l = 0; l < g.ny(); ++l) {
      const double a2 = std::norm(s[g.index(j, l)]);
      const double ky2 = ky[l] * ky[l];
      ax += kx2 * a2;
      ayy += ky2 * ky2 * a2;
      m += a2;
    }
  }
  const double scale = g.cell_area() / static_cast<double>(g.size());
  return SpectralNorms{ax * scale, ayy * scale, m * scale, lp_integral(f, p)};
}

double lp_integral(const Field& f, double p) {
  double acc = 0.0;
  for (const auto& z : f.data()) acc += abs_pow(z, p);
  return acc * f.grid().cell_area();
}

double energy(const SpectralNorms& n, double p) {
  return 0.5 * n.dx_sq + 0.5 * n.dyy_sq - n.lp / p;
}

double j_omega(const SpectralNorms& n, const ModelParams& params) {
  return energy(n, params.p) + 0.5 * params.omega * n.mass;
}

double i_omega(const SpectralNorms& n, const ModelParams& params) {
  return n.dx_sq + n.dyy_sq + params.omega * n.mass - n.lp;
}

double q_functional(const SpectralNorms& n, double p) {
  return n.dx_sq + n.dyy_sq - 3.0 * (p - 2.0) / (4.0 * p) * n.lp;
}

double k_functional(const SpectralNorms& n, double p) {
  return 0.5 * n.dyy_sq - (p - 2.0) / (8.0 * p) * n.lp;
}

double h12_norm(const SpectralNorms& n) {
  return std::sqrt(n.dx_sq) + std::sqrt(n.dyy_sq) + std::sqrt(n.mass);
}

double h12_norm_root(const SpectralNorms& n) { return std::sqrt(n.dx_sq + n.dyy_sq + n.mass); }

double h12_norm(const Field& f) { return h12_norm(spectral_norms(f, 2.0)); }

double mass(const Field& f) {
  double acc = 0.0;
  for (const auto& z : f.data()) acc += std::norm(z);
  return acc * f.grid().cell_area();
}

double energy(const Field& f, const ModelParams& params) {
  params.validate();
  return energy(spectral_norms(f, params.p), params.p);
}

double j_omega(const Field& f, const ModelParams& params) {
  params.validate();
  return j_omega(spectral_norms(f, params.p), params);
}

double i_omega(const Field& f, const ModelParams& params) {
  params.validate();
  return i_omega(spectral_norms(f, params.p), params);
}

double q_functional(const Field& f, const ModelParams& params) {
  params.validate();
  return q_functional(spectral_norms(f, params.p), params.p);
}

double k_functional(const Field& f, const ModelParams& params) {
  params.validate();
  return k_functional(spectral_norms(f, params.p), params.p);
}

FunctionalValues evaluate_functionals(const Field& f, const ModelParams& params) {
  params.validate();
  const auto n = spectral_norms(f, params.p);
  FunctionalValues v;
  v.mass = n.mass;
  v.energy = energy(n, params.p);
  v.j_omega = j_omega(n, params);
  v.i_omega = i_omega(n, params);
  v.q = q_functional(n, params.p);
  v.k = k_functional(n, params.p);
  v.virial = transverse_virial(f).value;
  v.h12_norm = h12_norm(n);
  return v;
}

double boundary_mass_fraction(const Field& f, BoundaryAxes axes) {
  const auto& g = f.grid();
  const std::size_t wx = std::max<std::size_t>(1, g.nx() / 16);
  const std::size_t wy = std::max<std::size_t>(1, g.ny() / 16);
  const bool use_x = axes != BoundaryAxes::y;
  const bool use_y = axes != BoundaryAxes::x;
  double total = 0.0;
  double edge = 0.0;
  for (std::size_t i = 0; i < g.nx(); ++i) {
    const bool edge_x = use_x && (i < wx || i >= g.nx() - wx);
    for (std::size_t j = 0; j < g.ny(); ++j) {
      const double a = std::norm(f(i, j));
      total += a;
      if (edge_x || (use_y && (j < wy || j >= g.ny() - wy))) edge += a;
    }
  }
  return total > 0.0 ? edge / total : 0.0;
}

VirialEstimate transverse_virial(const Field& f) {
  const auto& g = f.grid();
  double acc = 0.0;
  for (std::size_t i = 0; i < g.nx(); ++i) {
    const double x = g.x(i);
    double row = 0.0;
    for (std::size_t j = 0; j < g.ny(); ++j) row += std::norm(f(i, j));
    acc += x * x * row;
  }
  VirialEstimate v;
  v.value = acc * g.cell_area();
  v.boundary_mass_fraction = boundary_mass_fraction(f, BoundaryAxes::x);
  v.reliable = v.boundary_mass_fraction <= kVirialBoundaryThreshold;
  return v;
}

double virial_rate(const Field& f) {
  const auto& g = f.grid();
  const Field fx = spectral::dx(f);
  double acc = 0.0;
  for (std::size_t i = 0; i < g.nx(); ++i) {
    const double x = g.x(i);
    for (std::size_t j = 0; j < g.ny(); ++j) acc += x * (fx(i, j) * std::conj(f(i, j))).imag();
  }
  return 4.0 * acc * g.cell_area();
}

double PohozaevRatios::max_abs() const noexcept {
  return std::max({std::abs(r1), std::abs(r2), std::abs(r3)});
}

PohozaevRatios pohozaev_ratios(const SpectralNorms& n, const ModelParams& params) {
  if (!(n.lp > 0.0)) throw UndefinedRatioError("pohozaev_ratios: ||f||_p^p vanishes");
  const double p = params.p;
  PohozaevRatios r;
  r.r1 = (n.dx_sq + n.dyy_sq - 3.0 * (p - 2.0) / (4.0 * p) * n.lp) / n.lp;
  r.r2 = (params.omega * n.mass - (p + 6.0) / (4.0 * p) * n.lp) / n.lp;
  r.r3 = (n.dx_sq - 2.0 * n.dyy_sq) / n.lp;
  return r;
}

PohozaevRatios pohozaev_ratios(const Field& f, const ModelParams& params) {
  params.validate();
  return pohozaev_ratios(spectral_norms(f, params.p), params);
}

double gn_quotient(const SpectralNorms& n, double p) {
  if (!(n.dx_sq > 0.0 && n.dyy_sq > 0.0 && n.mass > 0.0)) {
    throw UndefinedRatioError("gn_quotient: a seminorm of the field vanishes");
  }
  const double denom = std::pow(n.dx_sq, (p - 2.0) / 4.0) * std::pow(n.dyy_sq, (p - 2.0) / 8.0) *
                       std::pow(n.mass, (p + 6.0) / 8.0);
  return n.lp / denom;
}

double gn_quotient(const Field& f, double p) {
  if (!(p > 2.0)) throw DomainError("gn_quotient: p must exceed 2");
  return gn_quotient(spectral_norms(f, p), p);
}

Field resample(const Field& f, double amplitude, double ax, double ay,
               const ResampleOptions& opts) {
  require_finite(f, "resample");
  if (!(amplitude > 0.0 && ax > 0.0 && ay > 0.0) || !std::isfinite(amplitude) ||
      !std::isfinite(ax) || !std::isfinite(ay)) {
    throw DomainError("resample: scale factors must be finite and positive");
  }
  const auto& g = f.grid();
  const Extent e = support_extent(f, opts.support_tol);
  if (e.x / ax > 0.5 * g.lx() || e.y / ay > 0.5 * g.ly()) {
    throw SupportOverflowError("rescaled field support exceeds the computational box");
  }
  std::vector<double> xs(g.nx());
  std::vector<double> ys(g.ny());
  for (std::size_t i = 0; i < g.nx(); ++i) xs[i] = ax * g.x(i);
  for (std::size_t j = 0; j < g.ny(); ++j) ys[j] = ay * g.y(j);
  Field out = interpolate(f, g, xs, ys);
  if (amplitude != 1.0) out *= amplitude;
  return out;
}

Field resample_to_grid(const Field& f, const Grid2D& target, const ResampleOptions& opts) {
  require_finite(f, "resample_to_grid");
  const Extent e = support_extent(f, opts.support_tol);
  if (e.x > 0.5 * target.lx() || e.y > 0.5 * target.ly()) {
    throw SupportOverflowError("field support exceeds the target box");
  }
  std::vector<double> xs(target.nx());
  std::vector<double> ys(target.ny());
  for (std::size_t i = 0; i < target.nx(); ++i) xs[i] = target.x(i);
  for (std::size_t j = 0; j < target.ny(); ++j) ys[j] = target.y(j);
  return interpolate(f, target, xs, ys);
}

Field scale_lambda(const Field& f, double lambda, const ResampleOptions& opts) {
  if (!(lambda > 0.0)) throw DomainError("scale_lambda: lambda must be positive");
  return resample(f, std::pow(lambda, 3.0 / 8.0), std::sqrt(lambda), std::pow(lambda, 0.25), opts);
}

Field scale_aniso(const Field& f, double mu, double lambda1, double lambda2,
                  const ResampleOptions& opts) {
  return resample(f, mu, lambda1, lambda2, opts);
}

Field scale_ylambda(const Field& f, double lambda, const ResampleOptions& opts) {
  if (!(lambda > 0.0)) throw DomainError("scale_ylambda: lambda must be positive");
  return resample(f, std::sqrt(lambda), 1.0, lambda, opts);
}

}  // namespace anls
