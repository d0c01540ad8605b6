#include "anls/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "anls/errors.hpp"

namespace anls {
namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::vector<double> wavenumbers(std::size_t n, double length) {
  std::vector<double> k(n);
  const double base = 2.0 * std::numbers::pi / length;
  for (std::size_t j = 0; j < n; ++j) {
    k[j] = base * static_cast<double>(Grid2D::wrap(j, n));
  }
  return k;
}

}  // namespace

Grid2D::Grid2D(std::size_t nx, std::size_t ny, double lx, double ly)
    : nx_(nx), ny_(ny), lx_(lx), ly_(ly) {
  if (!is_power_of_two(nx) || !is_power_of_two(ny) || nx < 2 || ny < 2) {
    throw DomainError("grid sizes must be powers of two >= 2, got " + std::to_string(nx) + "x" +
                      std::to_string(ny));
  }
  if (!(std::isfinite(lx) && std::isfinite(ly) && lx > 0.0 && ly > 0.0)) {
    throw DomainError("grid box lengths must be finite and positive");
  }
  kx_ = wavenumbers(nx, lx);
  ky_ = wavenumbers(ny, ly);
}

Field::Field(Grid2D grid) : grid_(std::move(grid)), data_(grid_.size(), Complex{}) {}

Field::Field(Grid2D grid, std::vector<Complex> data)
    : grid_(std::move(grid)), data_(std::move(data)) {
  if (data_.size() != grid_.size()) {
    throw DomainError("field data length " + std::to_string(data_.size()) +
                      " does not match grid size " + std::to_string(grid_.size()));
  }
}

bool Field::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

double Field::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

Field& Field::operator*=(Complex s) noexcept {
  for (auto& z : data_) z *= s;
  return *this;
}

Field& Field::operator+=(const Field& other) {
  if (!(grid_ == other.grid_)) throw DomainError("field grids differ");
  for (std::size_t n = 0; n < data_.size(); ++n) data_[n] += other.data_[n];
  return *this;
}

Field& Field::operator-=(const Field& other) {
  if (!(grid_ == other.grid_)) throw DomainError("field grids differ");
  for (std::size_t n = 0; n < data_.size(); ++n) data_[n] -= other.data_[n];
  return *this;
}

Field operator*(Complex s, Field f) { return f *= s; }
Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }

double l2_norm(const Field& f) {
  double s = 0.0;
  for (const auto& z : f.data()) s += std::norm(z);
  return std::sqrt(s * f.grid().cell_area());
}

double max_abs_diff(const Field& a, const Field& b) {
  if (!(a.grid() == b.grid())) throw DomainError("field grids differ");
  double m = 0.0;
  const auto da = a.data();
  const auto db = b.data();
  for (std::size_t n = 0; n < da.size(); ++n) m = std::max(m, std::abs(da[n] - db[n]));
  return m;
}

Field roll(const Field& f, long di, long dj) {
  const auto& g = f.grid();
  const auto nx = static_cast<long>(g.nx());
  const auto ny = static_cast<long>(g.ny());
  Field out(g);
  for (long i = 0; i < nx; ++i) {
    const long si = ((i - di) % nx + nx) % nx;
    for (long j = 0; j < ny; ++j) {
      const long sj = ((j - dj) % ny + ny) % ny;
      out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
          f(static_cast<std::size_t>(si), static_cast<std::size_t>(sj));
    }
  }
  return out;
}

void ModelParams::validate() const {
  if (!std::isfinite(p) || !std::isfinite(omega)) {
    throw DomainError("model parameters must be finite");
  }
  if (!(p > 2.0)) throw DomainError("nonlinearity exponent must satisfy p > 2");
}

void ModelParams::validate_for_ground_state() const {
  validate();
  if (!(omega > 0.0)) {
    throw DomainError("ground states require omega > 0 (no nontrivial solutions otherwise)");
  }
}

void require_finite(const Field& f, const char* where) {
  if (!f.all_finite()) throw DomainError(std::string(where) + ": field contains non-finite values");
}

}  // namespace anls
