#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace anls {

using Complex = std::complex<double>;

/// Periodic box [-Lx/2, Lx/2) x [-Ly/2, Ly/2) sampled on nx x ny points.
///
/// Both sizes must be powers of two. Sample (i, j) sits at
/// x = -Lx/2 + i*hx, y = -Ly/2 + j*hy, so index n/2 is the box centre.
/// Wavenumbers follow FFT ordering with the signed index in [-n/2, n/2).
class Grid2D {
 public:
  Grid2D(std::size_t nx, std::size_t ny, double lx, double ly);

  /// Square box [-half_width, half_width]^2 with n x n samples.
  static Grid2D square(std::size_t n, double half_width) {
    return Grid2D(n, n, 2.0 * half_width, 2.0 * half_width);
  }

  std::size_t nx() const noexcept { return nx_; }
  std::size_t ny() const noexcept { return ny_; }
  std::size_t size() const noexcept { return nx_ * ny_; }
  double lx() const noexcept { return lx_; }
  double ly() const noexcept { return ly_; }
  double hx() const noexcept { return lx_ / static_cast<double>(nx_); }
  double hy() const noexcept { return ly_ / static_cast<double>(ny_); }
  double cell_area() const noexcept { return hx() * hy(); }

  double x(std::size_t i) const noexcept { return -0.5 * lx_ + static_cast<double>(i) * hx(); }
  double y(std::size_t j) const noexcept { return -0.5 * ly_ + static_cast<double>(j) * hy(); }

  std::span<const double> kx() const noexcept { return kx_; }
  std::span<const double> ky() const noexcept { return ky_; }

  /// Signed frequency index of FFT slot j for a transform of length n.
  static long wrap(std::size_t j, std::size_t n) noexcept {
    const auto s = static_cast<long>(j);
    const auto half = static_cast<long>(n / 2);
    return s < half ? s : s - static_cast<long>(n);
  }

  std::size_t index(std::size_t i, std::size_t j) const noexcept { return i * ny_ + j; }

  bool operator==(const Grid2D& other) const noexcept {
    return nx_ == other.nx_ && ny_ == other.ny_ && lx_ == other.lx_ && ly_ == other.ly_;
  }

 private:
  std::size_t nx_;
  std::size_t ny_;
  double lx_;
  double ly_;
  std::vector<double> kx_;
  std::vector<double> ky_;
};

/// Complex field sampled on a Grid2D, row-major with x as the slow axis.
class Field {
 public:
  /// Placeholder 2 x 2 zero field.
  Field() : Field(Grid2D(2, 2, 1.0, 1.0)) {}
  explicit Field(Grid2D grid);
  Field(Grid2D grid, std::vector<Complex> data);

  /// Samples fn(x, y) at every grid point.
  template <class Fn>
  static Field sample(const Grid2D& grid, Fn&& fn) {
    Field f(grid);
    for (std::size_t i = 0; i < grid.nx(); ++i) {
      const double x = grid.x(i);
      for (std::size_t j = 0; j < grid.ny(); ++j) {
        f.data_[grid.index(i, j)] = Complex(fn(x, grid.y(j)));
      }
    }
    return f;
  }

  const Grid2D& grid() const noexcept { return grid_; }
  std::span<Complex> data() noexcept { return data_; }
  std::span<const Complex> data() const noexcept { return data_; }
  std::vector<Complex>& storage() noexcept { return data_; }

  Complex& operator()(std::size_t i, std::size_t j) noexcept { return data_[grid_.index(i, j)]; }
  const Complex& operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[grid_.index(i, j)];
  }

  bool all_finite() const noexcept;
  double max_abs() const noexcept;

  /// Set once a time step produced non-finite values; such fields are exempt
  /// from the finiteness invariant.
  bool post_blowup() const noexcept { return post_blowup_; }
  void mark_post_blowup() noexcept { post_blowup_ = true; }

  Field& operator*=(Complex s) noexcept;
  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);

 private:
  Grid2D grid_;
  std::vector<Complex> data_;
  bool post_blowup_ = false;
};

Field operator*(Complex s, Field f);
Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);

/// Discrete L2 norm sqrt(sum |f|^2 hx hy).
double l2_norm(const Field& f);

/// Max-norm of a - b on a shared grid.
double max_abs_diff(const Field& a, const Field& b);

/// Integer periodic shift: out(i, j) = f(i - di, j - dj).
Field roll(const Field& f, long di, long dj);

/// Nonlinearity exponent p and frequency omega.
struct ModelParams {
  double p = 4.0;
  double omega = 1.0;

  /// Throws DomainError unless p > 2 and both values are finite.
  void validate() const;
  /// Additionally requires omega > 0.
  void validate_for_ground_state() const;
};

/// Mass-critical exponent p = 14/3.
inline constexpr double kMassCriticalExponent = 14.0 / 3.0;

/// Throws DomainError when f contains NaN/Inf (unless flagged post-blowup).
void require_finite(const Field& f, const char* where);

}  // namespace anls
