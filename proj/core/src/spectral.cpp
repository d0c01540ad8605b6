#include "anls/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <utility>

#include "anls/errors.hpp"

namespace anls::spectral {
namespace {

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

// fftw_execute_dft is thread-safe; the planner is not.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  PlanPair get(std::size_t nx, std::size_t ny) {
    std::lock_guard lock(mutex_);
    auto it = plans_.find({nx, ny});
    if (it != plans_.end()) return it->second;

    auto* scratch = fftw_alloc_complex(nx * ny);
    PlanPair pair;
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    pair.forward = fftw_plan_dft_2d(static_cast<int>(nx), static_cast<int>(ny), scratch, scratch,
                                    FFTW_FORWARD, flags);
    pair.backward = fftw_plan_dft_2d(static_cast<int>(nx), static_cast<int>(ny), scratch,
                                     scratch, FFTW_BACKWARD, flags);
    fftw_free(scratch);
    plans_.emplace(std::make_pair(nx, ny), pair);
    return pair;
  }

  PlanCache(const PlanCache&) = delete;
  PlanCache& operator=(const PlanCache&) = delete;

 private:
  PlanCache() = default;
  ~PlanCache() {
    for (auto& [key, pair] : plans_) {
      fftw_destroy_plan(pair.forward);
      fftw_destroy_plan(pair.backward);
    }
  }

  std::mutex mutex_;
  std::map<std::pair<std::size_t, std::size_t>, PlanPair> plans_;
};

fftw_complex* as_fftw(std::span<Complex> data) {
  return reinterpret_cast<fftw_complex*>(data.data());
}

}  // namespace

void forward_inplace(const Grid2D& grid, std::span<Complex> data) {
  if (data.size() != grid.size()) throw DomainError("spectral transform: size mismatch");
  const auto plans = PlanCache::instance().get(grid.nx(), grid.ny());
  fftw_execute_dft(plans.forward, as_fftw(data), as_fftw(data));
}

void inverse_inplace(const Grid2D& grid, std::span<Complex> data) {
  if (data.size() != grid.size()) throw DomainError("spectral transform: size mismatch");
  const auto plans = PlanCache::instance().get(grid.nx(), grid.ny());
  fftw_execute_dft(plans.backward, as_fftw(data), as_fftw(data));
  const double scale = 1.0 / static_cast<double>(grid.size());
  for (auto& z : data) z *= scale;
}

Spectrum forward(const Field& f) {
  Spectrum s(f.data().begin(), f.data().end());
  forward_inplace(f.grid(), s);
  return s;
}

Field inverse(const Grid2D& grid, Spectrum s) {
  inverse_inplace(grid, s);
  return Field(grid, std::move(s));
}

Field dx(const Field& f) {
  require_finite(f, "dx");
  const auto kx = f.grid().kx();
  const std::size_t nyquist = f.grid().nx() / 2;
  return apply_multiplier(f, [&](std::size_t j, std::size_t) {
    return j == nyquist ? Complex{} : Complex(0.0, kx[j]);
  });
}

Field dxx(const Field& f) {
  require_finite(f, "dxx");
  const auto kx = f.grid().kx();
  return apply_multiplier(f, [&](std::size_t j, std::size_t) { return Complex(-kx[j] * kx[j]); });
}

Field dyy(const Field& f) {
  require_finite(f, "dyy");
  const auto ky = f.grid().ky();
  return apply_multiplier(f, [&](std::size_t, std::size_t m) { return Complex(-ky[m] * ky[m]); });
}

Field dyyyy(const Field& f) {
  require_finite(f, "dyyyy");
  const auto ky = f.grid().ky();
  return apply_multiplier(f, [&](std::size_t, std::size_t m) {
    const double k2 = ky[m] * ky[m];
    return Complex(k2 * k2);
  });
}

std::vector<double> dispersion_symbol(const Grid2D& grid) {
  std::vector<double> symbol(grid.size());
  const auto kx = grid.kx();
  const auto ky = grid.ky();
  for (std::size_t j = 0; j < grid.nx(); ++j) {
    for (std::size_t m = 0; m < grid.ny(); ++m) {
      const double ky2 = ky[m] * ky[m];
      symbol[grid.index(j, m)] = kx[j] * kx[j] + ky2 * ky2;
    }
  }
  return symbol;
}

Field linear_propagate(const Field& f, double t) {
  require_finite(f, "linear_propagate");
  if (!std::isfinite(t)) throw DomainError("linear_propagate: non-finite time");
  if (t == 0.0) return f;
  const auto& g = f.grid();
  const auto symbol = dispersion_symbol(g);
  Spectrum s = forward(f);
  for (std::size_t n = 0; n < s.size(); ++n) s[n] *= std::polar(1.0, -t * symbol[n]);
  return inverse(g, std::move(s));
}

std::vector<double> dealias_mask(const Grid2D& grid) {
  std::vector<double> mask(grid.size());
  const long cut_x = static_cast<long>(grid.nx() / 3);
  const long cut_y = static_cast<long>(grid.ny() / 3);
  for (std::size_t j = 0; j < grid.nx(); ++j) {
    const bool keep_x = std::labs(Grid2D::wrap(j, grid.nx())) <= cut_x;
    for (std::size_t m = 0; m < grid.ny(); ++m) {
      const bool keep_y = std::labs(Grid2D::wrap(m, grid.ny())) <= cut_y;
      mask[grid.index(j, m)] = (keep_x && keep_y) ? 1.0 : 0.0;
    }
  }
  return mask;
}

bool dealias_by_default(double p) noexcept {
  return p == 3.0 || p == 4.0 || p == 5.0 || p == 6.0;
}

double spectral_mass(const Grid2D& grid, std::span<const Complex> s) {
  double acc = 0.0;
  for (const auto& z : s) acc += std::norm(z);
  return acc * grid.cell_area() / static_cast<double>(grid.size());
}

}  // namespace anls::spectral
