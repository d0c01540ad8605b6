#pragma once

#include <span>
#include <vector>

#include "anls/grid.hpp"

namespace anls::spectral {

/// Fourier coefficients in FFT ordering, same layout as Field data.
using Spectrum = std::vector<Complex>;

/// Unnormalised forward DFT, in place.
void forward_inplace(const Grid2D& grid, std::span<Complex> data);
/// Inverse DFT including the 1/(nx*ny) factor, in place.
void inverse_inplace(const Grid2D& grid, std::span<Complex> data);

Spectrum forward(const Field& f);
Field inverse(const Grid2D& grid, Spectrum s);

/// Multiplies mode (j, m) by mult(j, m) and transforms back.
template <class Mult>
Field apply_multiplier(const Field& f, Mult&& mult) {
  const auto& g = f.grid();
  Spectrum s = forward(f);
  for (std::size_t j = 0; j < g.nx(); ++j) {
    for (std::size_t m = 0; m < g.ny(); ++m) s[g.index(j, m)] *= mult(j, m);
  }
  return inverse(g, std::move(s));
}

/// Spectral d/dx; the Nyquist x-mode is zeroed so real fields stay real.
Field dx(const Field& f);
/// Spectral d^2/dx^2 (multiplier -kx^2).
Field dxx(const Field& f);
/// Spectral d^2/dy^2 (multiplier -ky^2).
Field dyy(const Field& f);
/// Spectral d^4/dy^4 (multiplier ky^4).
Field dyyyy(const Field& f);

/// kx[j]^2 + ky[m]^2^2, the symbol of -d_xx + d_yyyy.
std::vector<double> dispersion_symbol(const Grid2D& grid);

/// Free group: multiplies each mode by exp(-i t (kx^2 + ky^4)). Unitary.
Field linear_propagate(const Field& f, double t);

/// 2/3-rule mask: 1 where |signed index| <= n/3 on both axes, else 0.
std::vector<double> dealias_mask(const Grid2D& grid);

/// Whether the 2/3 rule applies by default for exponent p (integer p in 3..6).
bool dealias_by_default(double p) noexcept;

/// sum |s|^2 * hx*hy / (nx*ny): the physical L2 mass of a spectrum.
double spectral_mass(const Grid2D& grid, std::span<const Complex> s);

}  // namespace anls::spectral
