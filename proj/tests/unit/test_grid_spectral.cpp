#include <gtest/gtest.h>

#include <cmath>
#include <atomic>
#include <numbers>
#include <thread>

#include "anls/errors.hpp"
#include "anls/random_fields.hpp"
#include "anls/spectral.hpp"

using namespace anls;
using std::numbers::pi;

namespace {

double max_err(const Field& f, auto&& exact) {
  const auto& g = f.grid();
  double e = 0.0;
  for (std::size_t i = 0; i < g.nx(); ++i)
    for (std::size_t j = 0; j < g.ny(); ++j) e = std::max(e, std::abs(f(i, j) - Complex(exact(g.x(i), g.y(j)))));
  return e;
}

Field gauss(const Grid2D& g) {
  return Field::sample(g, [](double x, double y) { return std::exp(-x * x - y * y); });
}

}  // namespace

TEST(Grid, RejectsNonPowerOfTwo) {
  EXPECT_THROW(Grid2D(100, 64, 1.0, 1.0), DomainError);
  EXPECT_THROW(Grid2D(64, 64, 0.0, 1.0), DomainError);
  EXPECT_NO_THROW(Grid2D(64, 128, 1.0, 2.0));
}

TEST(Grid, Wavenumbers) {
  const Grid2D g(8, 4, 2 * pi, pi);
  EXPECT_EQ(g.kx()[0], 0.0);
  EXPECT_EQ(g.ky()[0], 0.0);
  EXPECT_DOUBLE_EQ(g.kx()[1], 1.0);
  EXPECT_DOUBLE_EQ(g.kx()[4], -4.0);
  EXPECT_DOUBLE_EQ(g.ky()[1], 2.0);
  EXPECT_DOUBLE_EQ(g.ky()[3], -2.0);
  EXPECT_DOUBLE_EQ(g.x(4), 0.0);
}

TEST(Spectral, DerivativesOfZero) {
  const Field z(Grid2D::square(32, 5.0));
  EXPECT_EQ(spectral::dx(z).max_abs(), 0.0);
  EXPECT_EQ(spectral::dyy(z).max_abs(), 0.0);
}

TEST(Spectral, DxSingleMode) {
  const Grid2D g(64, 64, 3.0, 5.0);
  const double k = 2 * pi / g.lx();
  const Field f = Field::sample(g, [&](double x, double) { return std::sin(k * x); });
  EXPECT_LT(max_err(spectral::dx(f), [&](double x, double) { return k * std::cos(k * x); }), 1e-12);
}

TEST(Spectral, DyySingleMode) {
  const Grid2D g(64, 64, 3.0, 5.0);
  const double k = 2 * pi / g.ly();
  const Field f = Field::sample(g, [&](double, double y) { return std::cos(k * y); });
  EXPECT_LT(max_err(spectral::dyy(f), [&](double, double y) { return -k * k * std::cos(k * y); }), 1e-12);
}

TEST(Spectral, GaussianDerivatives) {
  const Grid2D g = Grid2D::square(256, 10.0);
  const Field f = gauss(g);
  EXPECT_LT(max_err(spectral::dx(f), [](double x, double y) { return -2 * x * std::exp(-x * x - y * y); }), 1e-10);
  EXPECT_LT(max_err(spectral::dyy(f),
                    [](double x, double y) { return (4 * y * y - 2) * std::exp(-x * x - y * y); }),
            1e-9);
  EXPECT_LT(max_err(spectral::dyyyy(f),
                    [](double x, double y) {
                      return (16 * std::pow(y, 4) - 48 * y * y + 12) * std::exp(-x * x - y * y);
                    }),
            1e-8);
}

TEST(Spectral, DxDxIsMinusKSquaredPerMode) {
  const Grid2D g(32, 32, 7.0, 7.0);
  for (int m : {1, 3, 7}) {
    const double k = 2 * pi * m / g.lx();
    const Field f = Field::sample(g, [&](double x, double) { return std::cos(k * x); });
    const Field d2 = spectral::dx(spectral::dx(f));
    EXPECT_LT(max_err(d2, [&](double x, double) { return -k * k * std::cos(k * x); }), 1e-11);
  }
}

TEST(Spectral, NonFiniteInputRejected) {
  Field f(Grid2D::square(16, 1.0));
  f(3, 3) = Complex(std::nan(""), 0.0);
  EXPECT_THROW(spectral::dx(f), DomainError);
  EXPECT_THROW(spectral::linear_propagate(f, 0.1), DomainError);
}

TEST(Spectral, DispersionSymbol) {
  const Grid2D a(8, 8, 2 * pi, 2 * pi);
  const auto sa = spectral::dispersion_symbol(a);
  EXPECT_EQ(sa[a.index(0, 0)], 0.0);
  EXPECT_DOUBLE_EQ(sa[a.index(1, 1)], 2.0);
  const Grid2D b(8, 8, 2 * pi, pi);
  const auto sb = spectral::dispersion_symbol(b);
  EXPECT_DOUBLE_EQ(sb[b.index(1, 1)], 17.0);
  for (std::size_t j = 1; j < b.nx(); ++j)
    for (std::size_t m = 1; m < b.ny(); ++m) {
      EXPECT_GE(sb[b.index(j, m)], 0.0);
      EXPECT_EQ(sb[b.index(j, m)], sb[b.index(b.nx() - j, m)]);
      EXPECT_EQ(sb[b.index(j, m)], sb[b.index(j, b.ny() - m)]);
    }
}

TEST(Spectral, PropagateIdentityAtZero) {
  const Grid2D g = Grid2D::square(64, 8.0);
  const Field f = gauss(g);
  const auto a = spectral::forward(f);
  const auto b = spectral::forward(spectral::linear_propagate(f, 0.0));
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t n = 0; n < a.size(); ++n) ASSERT_EQ(a[n], b[n]);
}

TEST(Spectral, PropagateUnitaryAndGroup) {
  const Grid2D g = Grid2D::square(128, 10.0);
  Rng rng(7);
  const Field f = random_smooth_field(g, rng);
  for (double t : {-1.3, 0.01, 0.37, 5.0}) {
    EXPECT_NEAR(l2_norm(spectral::linear_propagate(f, t)) / l2_norm(f), 1.0, 1e-13);
  }
  const Field h = gauss(g);
  const Field back = spectral::linear_propagate(spectral::linear_propagate(h, 0.37), -0.37);
  EXPECT_LT(max_abs_diff(back, h), 1e-12);
}

TEST(Spectral, PropagateCommutesWithDerivatives) {
  const Grid2D g = Grid2D::square(128, 10.0);
  const Field f = gauss(g);
  EXPECT_LT(max_abs_diff(spectral::linear_propagate(spectral::dx(f), 0.2),
                         spectral::dx(spectral::linear_propagate(f, 0.2))),
            1e-11);
  EXPECT_LT(max_abs_diff(spectral::linear_propagate(spectral::dyy(f), 0.2),
                         spectral::dyy(spectral::linear_propagate(f, 0.2))),
            1e-11);
}

TEST(Spectral, Parseval) {
  const Grid2D g(64, 128, 9.0, 13.0);
  Rng rng(11);
  const Field f = random_smooth_field(g, rng);
  double phys = 0.0;
  for (const auto& v : f.data()) phys += std::norm(v);
  phys *= g.cell_area();
  const auto s = spectral::forward(f);
  EXPECT_NEAR(spectral::spectral_mass(g, s) / phys, 1.0, 1e-12);
}

TEST(Spectral, DealiasMask) {
  const Grid2D g(64, 64, 1.0, 1.0);
  const auto m = spectral::dealias_mask(g);
  EXPECT_EQ(m[g.index(0, 0)], 1.0);
  EXPECT_EQ(m[g.index(32, 0)], 0.0);
  EXPECT_TRUE(spectral::dealias_by_default(4.0));
  EXPECT_FALSE(spectral::dealias_by_default(14.0 / 3.0));
}

TEST(Spectral, ConcurrentTransformsAgree) {
  const Grid2D g = Grid2D::square(64, 6.0);
  const Field f = gauss(g);
  const Field ref = spectral::dx(f);
  std::vector<std::thread> pool;
  std::atomic<int> bad{0};
  for (int t = 0; t < 4; ++t) {
    pool.emplace_back([&] {
      for (int k = 0; k < 20; ++k)
        if (max_abs_diff(spectral::dx(f), ref) != 0.0) ++bad;
    });
  }
  for (auto& t : pool) t.join();
  EXPECT_EQ(bad.load(), 0);
}
