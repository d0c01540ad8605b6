#include <algorithm>
#include <cmath>
#include <functional>

#include "anls/ground_state.hpp"
#include "anls/spectral.hpp"

namespace anls {
namespace {

// Bin order 0, +1, -1, +2, -2, ..., n/2 (Nyquist last) in FFT index space.
std::vector<std::size_t> symmetric_order(std::size_t n) {
  std::vector<std::size_t> order{0};
  for (std::size_t k = 1; k < n / 2; ++k) {
    order.push_back(k);
    order.push_back(n - k);
  }
  if (n > 1) order.push_back(n / 2);
  return order;
}

}  // namespace

Field fourier_rearrange(const Field& f, Axis axis) {
  require_finite(f, "fourier_rearrange");
  const auto& g = f.grid();
  auto spec = spectral::forward(f);
  const std::size_t len = axis == Axis::x ? g.nx() : g.ny();
  const std::size_t lines = axis == Axis::x ? g.ny() : g.nx();
  const auto order = symmetric_order(len);
  std::vector<double> moduli(len);
  for (std::size_t l = 0; l < lines; ++l) {
    auto at = [&](std::size_t k) -> Complex& {
      return axis == Axis::x ? spec[g.index(k, l)] : spec[g.index(l, k)];
    };
    for (std::size_t k = 0; k < len; ++k) moduli[k] = std::abs(at(k));
    std::sort(moduli.begin(), moduli.end(), std::greater<>());
    for (std::size_t r = 0; r < len; ++r) at(order[r]) = moduli[r];
  }
  Field out = spectral::inverse(g, std::move(spec));
  return roll(out, static_cast<long>(g.nx() / 2), static_cast<long>(g.ny() / 2));
}

SymmetryReport symmetry_report(const Field& f) {
  require_finite(f, "symmetry_report");
  const auto& g = f.grid();
  const double peak = f.max_abs();
  if (!(peak > 0.0)) throw UndefinedRatioError("symmetry_report: field vanishes identically");
  const Field u = normalize_phase_and_center(f);
  SymmetryReport r;
  const auto d = f.data();
  const auto it = std::max_element(d.begin(), d.end(),
                                   [](Complex a, Complex b) { return std::abs(a) < std::abs(b); });
  const auto at = static_cast<std::size_t>(it - d.begin());
  r.peak_i = at / g.ny();
  r.peak_j = at % g.ny();
  double ax = 0.0;
  double ay = 0.0;
  for (std::size_t i = 0; i < g.nx(); ++i) {
    const std::size_t ri = (g.nx() - i) % g.nx();
    for (std::size_t j = 0; j < g.ny(); ++j) {
      const std::size_t rj = (g.ny() - j) % g.ny();
      ax = std::max(ax, std::abs(u(i, j) - u(ri, j)));
      ay = std::max(ay, std::abs(u(i, j) - u(i, rj)));
    }
  }
  r.x_reflection_asymmetry = ax / peak;
  r.y_reflection_asymmetry = ay / peak;
  return r;
}

SymmetryReport symmetry_report(const GroundStateResult& result) {
  return symmetry_report(result.profile);
}

}  // namespace anls
