#include "anls/random_fields.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace anls {

Field band_limited_noise(const Grid2D& grid, Rng& rng) {
  constexpr std::size_t kModes = 8;
  std::normal_distribution<double> amp(0.0, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);

  std::array<double, kModes * kModes> c{};
  std::array<double, kModes * kModes> phx{};
  std::array<double, kModes * kModes> phy{};
  for (std::size_t n = 0; n < c.size(); ++n) {
    c[n] = amp(rng);
    phx[n] = phase(rng);
    phy[n] = phase(rng);
  }

  const double kx0 = 2.0 * std::numbers::pi / grid.lx();
  const double ky0 = 2.0 * std::numbers::pi / grid.ly();
  Field f(grid);
  for (std::size_t i = 0; i < grid.nx(); ++i) {
    const double x = grid.x(i);
    for (std::size_t j = 0; j < grid.ny(); ++j) {
      const double y = grid.y(j);
      double v = 0.0;
      for (std::size_t a = 0; a < kModes; ++a) {
        const double cx = std::cos(kx0 * static_cast<double>(a) * x + phx[a * kModes]);
        for (std::size_t b = 0; b < kModes; ++b) {
          v += c[a * kModes + b] * cx * std::cos(ky0 * static_cast<double>(b) * y + phy[a * kModes + b]);
        }
      }
      f(i, j) = v;
    }
  }
  const double m = f.max_abs();
  if (m > 0.0) f *= 1.0 / m;
  return f;
}

Field gaussian(const Grid2D& grid, double amplitude, double sigma_x, double sigma_y) {
  return Field::sample(grid, [&](double x, double y) {
    return amplitude * std::exp(-x * x / (sigma_x * sigma_x) - y * y / (sigma_y * sigma_y));
  });
}

Field random_smooth_field(const Grid2D& grid, Rng& rng, bool positive_only) {
  std::uniform_int_distribution<int> count(1, 3);
  std::uniform_real_distribution<double> width(0.6, 2.0);
  std::uniform_real_distribution<double> centre(-1.5, 1.5);
  std::uniform_real_distribution<double> amplitude(0.3, 1.0);
  std::bernoulli_distribution negative(0.3);

  struct Bump {
    double a, cx, cy, sx, sy;
  };
  const int n = count(rng);
  std::array<Bump, 3> bumps{};
  for (int b = 0; b < n; ++b) {
    double a = amplitude(rng);
    if (!positive_only && negative(rng)) a = -a;
    bumps[b] = Bump{a, centre(rng), centre(rng), width(rng), width(rng)};
  }
  return Field::sample(grid, [&](double x, double y) {
    double v = 0.0;
    for (int b = 0; b < n; ++b) {
      const auto& bp = bumps[b];
      const double dx = (x - bp.cx) / bp.sx;
      const double dy = (y - bp.cy) / bp.sy;
      v += bp.a * std::exp(-dx * dx - dy * dy);
    }
    return v;
  });
}

}  // namespace anls
