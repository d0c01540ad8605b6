#pragma once

#include <cstdint>
#include <random>

#include "anls/grid.hpp"

namespace anls {

/// The one generator type used for every stochastic choice.
using Rng = std::mt19937_64;

/// Real noise built from the lowest 8 wavenumbers on each axis,
/// normalised to max|noise| = 1.
Field band_limited_noise(const Grid2D& grid, Rng& rng);

/// Anisotropic Gaussian amplitude * exp(-x^2/sx^2 - y^2/sy^2), centred at the box centre.
Field gaussian(const Grid2D& grid, double amplitude = 1.0, double sigma_x = 1.0,
               double sigma_y = 1.0);

/// Sum of one to three random anisotropic Gaussian bumps near the box centre.
/// Widths lie in [0.6, 2], centres within +-1.5, amplitudes of either sign
/// unless positive_only is set.
Field random_smooth_field(const Grid2D& grid, Rng& rng, bool positive_only = false);

}  // namespace anls
