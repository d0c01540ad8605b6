#pragma once

#include <cmath>

#include "anls/grid.hpp"

namespace anls::detail {

/// |z|^{p-2} evaluated with hypot; 0 at z = 0 for every p > 2.
inline double abs_pow_minus_two(const Complex& z, double p) {
  const double n2 = std::norm(z);
  if (p == 4.0) return n2;
  if (p == 6.0) return n2 * n2;
  if (p == 3.0) return std::abs(z);
  if (p == 5.0) return std::abs(z) * n2;
  const double a = std::abs(z);
  return a == 0.0 ? 0.0 : std::pow(a, p - 2.0);
}

/// N(u) = |u|^{p-2} u, pointwise.
inline void nonlinearity(std::span<const Complex> u, std::span<Complex> out, double p) {
  for (std::size_t n = 0; n < u.size(); ++n) out[n] = abs_pow_minus_two(u[n], p) * u[n];
}

}  // namespace anls::detail
