#include <algorithm>
#include <cmath>
#include <limits>

#include "anls/ground_state.hpp"
#include "anls/random_fields.hpp"
#include "anls/spectral.hpp"
#include "nonlinearity.hpp"

namespace anls {
namespace {

double log_quotient(const SpectralNorms& n, double p) {
  if (!(n.dx_sq > 0.0 && n.dyy_sq > 0.0 && n.mass > 0.0 && n.lp > 0.0)) {
    return -std::numeric_limits<double>::infinity();
  }
  return std::log(n.lp) - (p - 2.0) / 4.0 * std::log(n.dx_sq) -
         (p - 2.0) / 8.0 * std::log(n.dyy_sq) - (p + 6.0) / 8.0 * std::log(n.mass);
}

}  // namespace

double gn_quotient_ascend(Field& f, double p, std::size_t max_iter) {
  if (!(p > 2.0)) throw DomainError("gn_quotient_ascend: p must exceed 2");
  require_finite(f, "gn_quotient_ascend");
  const auto& g = f.grid();
  const std::size_t size = g.size();
  const auto kx = g.kx();
  const auto ky = g.ky();
  const double target_mass = mass(f);
  if (!(target_mass > 0.0)) throw DomainError("gn_quotient_ascend: field must be nonzero");

  std::vector<Complex> spec_u(size);
  std::vector<Complex> spec_n(size);
  std::vector<Complex> dir(size);
  SpectralNorms n = spectral_norms(f, p);
  double value = log_quotient(n, p);
  double step = 1.0;

  for (std::size_t it = 0; it < max_iter; ++it) {
    std::copy(f.data().begin(), f.data().end(), spec_u.begin());
    spectral::forward_inplace(g, spec_u);
    detail::nonlinearity(f.data(), spec_n, p);
    spectral::forward_inplace(g, spec_n);

    const double ca = (p - 2.0) / (2.0 * n.dx_sq);
    const double cb = (p - 2.0) / (4.0 * n.dyy_sq);
    const double cm = (p + 6.0) / (4.0 * n.mass);
    const double cp = p / n.lp;
    double slope = 0.0;
    for (std::size_t i = 0; i < g.nx(); ++i) {
      const double kx2 = i == g.nx() / 2 ? 0.0 : kx[i] * kx[i];
      for (std::size_t j = 0; j < g.ny(); ++j) {
        const std::size_t idx = g.index(i, j);
        const double ky4 = ky[j] * ky[j] * ky[j] * ky[j];
        const double lin = ca * kx2 + cb * ky4 + cm;
        const Complex grad = cp * spec_n[idx] - lin * spec_u[idx];
        dir[idx] = grad / lin;
        slope += std::norm(grad) / lin;
      }
    }
    slope *= g.cell_area() / static_cast<double>(size);
    if (!(slope > 1e-28)) break;

    bool accepted = false;
    Field trial(g);
    for (int bt = 0; bt < 40; ++bt) {
      auto td = trial.data();
      for (std::size_t idx = 0; idx < size; ++idx) td[idx] = spec_u[idx] + step * dir[idx];
      spectral::inverse_inplace(g, td);
      trial *= std::sqrt(target_mass / mass(trial));
      const SpectralNorms tn = spectral_norms(trial, p);
      const double tv = log_quotient(tn, p);
      if (std::isfinite(tv) && tv >= value + 1e-4 * step * slope) {
        f = trial;
        n = tn;
        const double gain = tv - value;
        value = tv;
        accepted = true;
        step = std::min(step * 2.0, 4.0);
        if (gain < 1e-14 * std::abs(value)) it = max_iter;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
  }
  return std::exp(value);
}

QuotientMaximum gn_quotient_maximize(double p, const Grid2D& grid, std::size_t restarts,
                                     const QuotientSearchOptions& opts) {
  if (!(p > 2.0)) throw DomainError("gn_quotient_maximize: p must exceed 2");
  if (restarts == 0) throw DomainError("gn_quotient_maximize: need at least one restart");
  Rng rng(opts.rng_seed);
  QuotientMaximum out;
  for (std::size_t r = 0; r < restarts; ++r) {
    Field f = random_smooth_field(grid, rng);
    double q = 0.0;
    try {
      q = gn_quotient_ascend(f, p, opts.max_iter);
    } catch (const UndefinedRatioError&) {
      q = 0.0;
    }
    out.per_restart.push_back(q);
    if (q > out.best) {
      out.best = q;
      out.best_field = f;
    }
  }
  return out;
}

}  // namespace anls
