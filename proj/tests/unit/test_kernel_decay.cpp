#include <gtest/gtest.h>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_fit.h>
#include <gsl/gsl_integration.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "anls/errors.hpp"
#include "anls/ground_state.hpp"
#include "anls/kernel_decay.hpp"
#include "anls/random_fields.hpp"

using namespace anls;
using std::numbers::pi;

namespace {

// Independent oracle: the x-transform of 1 / (1 + xi1^2 + xi2^4) in closed form leaves
// K(x, y) = 2 int_0^inf (pi / a) exp(-2 pi a |x|) cos(2 pi y xi) dxi, a = sqrt(1 + xi^4).
double kernel_oracle(double x, double y) {
  gsl_set_error_handler_off();
  struct P {
    double x, y;
  } par{x, y};
  gsl_function fn;
  fn.function = [](double xi, void* v) {
    const auto* q = static_cast<P*>(v);
    const double a = std::sqrt(1.0 + std::pow(xi, 4));
    return 2.0 * (pi / a) * std::exp(-2 * pi * a * std::abs(q->x)) * std::cos(2 * pi * q->y * xi);
  };
  fn.params = &par;
  gsl_integration_workspace* ws = gsl_integration_workspace_alloc(4000);
  double out = 0.0;
  double err = 0.0;
  gsl_integration_qagiu(&fn, 0.0, 1e-14, 1e-12, 4000, ws, &out, &err);
  gsl_integration_workspace_free(ws);
  return out;
}

double h2_oracle(double z) {
  gsl_set_error_handler_off();
  gsl_function fn;
  fn.function = [](double xi, void* v) {
    return 2.0 * std::cos(2 * pi * *static_cast<double*>(v) * xi) * std::exp(-std::pow(xi, 4));
  };
  fn.params = &z;
  gsl_integration_workspace* ws = gsl_integration_workspace_alloc(2000);
  double out = 0.0;
  double err = 0.0;
  gsl_integration_qag(&fn, 0.0, 8.0, 1e-15, 1e-13, 2000, GSL_INTEG_GAUSS61, ws, &out, &err);
  gsl_integration_workspace_free(ws);
  return out;
}

}  // namespace

TEST(H2, ValueAtZero) {
  EXPECT_NEAR(h2_unit(0.0), std::tgamma(0.25) / 2.0, 1e-12);
}

TEST(H2, MatchesDirectQuadratureWhereAccurate) {
  for (double z = 0.05; z < 2.0; z += 0.173) {
    EXPECT_NEAR(h2_unit(z), h2_oracle(z), 1e-10) << z;
    EXPECT_EQ(h2_unit(z), h2_unit(-z));
  }
}

TEST(H2, AsymptoticConstants) {
  // Saddle point xi^3 = i pi z / 2 of -xi^4 + 2 pi i z xi gives 3 (pi z / 2)^{4/3} e^{2 pi i / 3}.
  const auto& a = h2_asymptotics();
  const double c1 = 1.5 * std::pow(pi / 2.0, 4.0 / 3.0);
  EXPECT_NEAR(a.c1, c1, 1e-4 * c1);
  EXPECT_NEAR(a.c2, std::sqrt(3.0) * c1, 1e-4 * c1);
  EXPECT_GT(a.c0, 0.0);
  EXPECT_NEAR(a.phase, pi / 6, 0.01);
}

TEST(H2, EnvelopeBounded) {
  const auto& a = h2_asymptotics();
  double worst = 0.0;
  for (double z = 2.0; z <= 8.0; z += 0.01) {
    worst = std::max(worst, std::abs(h2_unit(z)) * std::pow(z, 1.0 / 3.0) * std::exp(a.c1 * std::pow(z, 4.0 / 3.0)));
  }
  EXPECT_LT(worst, 2.0 * a.c0);
}

TEST(Kernel, AgreesWithOracle) {
  int compared = 0;
  for (double x : {0.3, 0.8, 1.5}) {
    for (double y : {0.0, 0.7, 1.9, 3.1}) {
      const double ref = kernel_oracle(x, y);
      if (std::abs(ref) < 1e-10) continue;
      EXPECT_NEAR(kernel_eval(x, y), ref, 1e-8 * std::abs(ref) + 1e-12) << x << "," << y;
      ++compared;
    }
  }
  EXPECT_GE(compared, 10);
}

TEST(Kernel, Symmetric) {
  for (auto [x, y] : std::vector<std::pair<double, double>>{{0.5, 1.0}, {1.2, 0.3}, {0.0, 2.0}}) {
    const double k = kernel_eval(x, y);
    EXPECT_NEAR(kernel_eval(-x, y), k, 1e-10);
    EXPECT_NEAR(kernel_eval(x, -y), k, 1e-10);
    EXPECT_NEAR(kernel_eval(-x, -y), k, 1e-10);
  }
}

TEST(Kernel, PositiveAlongXAxis) {
  for (double x = 0.5; x <= 5.0; x += 0.5) EXPECT_GT(kernel_eval(x, 0.0), 0.0) << x;
}

TEST(Kernel, OriginRejected) {
  EXPECT_THROW(kernel_eval(0.0, 0.0), DomainError);
  EXPECT_THROW(kernel_eval(1.0, 1.0, 0.0), DomainError);
}

TEST(Kernel, DecayBoundAlongDiagonal) {
  // log|K| + (1/3) log y against x + y^{2/3} along x = y in [2, 6].
  std::vector<double> s;
  std::vector<double> v;
  for (double t = 2.0; t <= 6.0; t += 0.25) {
    const double k = kernel_eval(t, t);
    ASSERT_GT(std::abs(k), 0.0);
    s.push_back(t + std::pow(t, 2.0 / 3.0));
    v.push_back(std::log(std::abs(k)) + std::log(t) / 3.0);
  }
  double c0, c1, cov00, cov01, cov11, sumsq;
  gsl_fit_linear(s.data(), 1, v.data(), 1, s.size(), &c0, &c1, &cov00, &cov01, &cov11, &sumsq);
  double mean = 0.0;
  for (double w : v) mean += w / static_cast<double>(v.size());
  double tot = 0.0;
  for (double w : v) tot += (w - mean) * (w - mean);
  EXPECT_LT(c1, 0.0);
  EXPECT_GT(1.0 - sumsq / tot, 0.99);
  const double c2 = -c1;
  double c1_bound = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) c1_bound = std::max(c1_bound, std::exp(v[k] + c2 * s[k]));
  for (std::size_t k = 0; k < s.size(); ++k) EXPECT_LE(std::exp(v[k]), c1_bound * std::exp(-c2 * s[k]) * (1 + 1e-12));
}

class DecayFitTest : public ::testing::Test {
 protected:
  static const GroundStateResult& profile() {
    static const GroundStateResult r = [] {
      const Grid2D g = Grid2D::square(512, 30.0);
      return petviashvili_solve({3.0, 1.0}, g, gaussian(g));
    }();
    return r;
  }
};

TEST_F(DecayFitTest, XDecayIsExponential) {
  const auto f = decay_fit(profile());
  EXPECT_GT(f.sigma_x, 0.0);
  EXPECT_GT(f.r_squared_x, 0.99);
  EXPECT_GE(f.samples_x, 10u);
  // Linearised x-decay rate at omega = 1: the profile tail follows exp(-|x|) up to algebraic factors.
  EXPECT_NEAR(f.sigma_x, 1.0, 0.1);
}

TEST_F(DecayFitTest, YTailOscillatesWithEnvelopeRate) {
  // Along y the linear operator 1 + k^4 has its nearest complex roots at k = e^{i pi/4}, so the tail
  // behaves like y^{-1/2} exp(-y / sqrt 2) cos(y / sqrt 2 + phi): zeros pi sqrt 2 apart.
  const Field& u = profile().profile;
  const auto& g = u.grid();
  const std::size_t i0 = g.nx() / 2;
  std::vector<double> zeros;
  for (std::size_t j = g.ny() / 2; j + 1 < g.ny(); ++j) {
    const double a = u(i0, j).real();
    const double b = u(i0, j + 1).real();
    if (g.y(j) > 6.0 && g.y(j) < 26.0 && a * b < 0.0) zeros.push_back(g.y(j) - a * g.hy() / (b - a));
  }
  ASSERT_GE(zeros.size(), 4u);
  for (std::size_t k = 1; k < zeros.size(); ++k) EXPECT_NEAR(zeros[k] - zeros[k - 1], pi * std::sqrt(2.0), 0.1) << zeros[k];
  EXPECT_NEAR(zeros.back() - zeros[zeros.size() - 2], pi * std::sqrt(2.0), 0.03);

  std::vector<double> y;
  std::vector<double> v;
  for (std::size_t k = 1; k < zeros.size(); ++k) {
    double crest = 0.0;
    double at = 0.0;
    for (std::size_t j = g.ny() / 2; j < g.ny(); ++j) {
      if (g.y(j) > zeros[k - 1] && g.y(j) < zeros[k] && std::abs(u(i0, j)) > crest) {
        crest = std::abs(u(i0, j));
        at = g.y(j);
      }
    }
    y.push_back(at);
    v.push_back(std::log(crest) + 0.5 * std::log(at));
  }
  double c0, c1, cov00, cov01, cov11, sumsq;
  gsl_fit_linear(y.data(), 1, v.data(), 1, y.size(), &c0, &c1, &cov00, &cov01, &cov11, &sumsq);
  EXPECT_NEAR(-c1, 1.0 / std::sqrt(2.0), 0.05);
}

TEST_F(DecayFitTest, RequiresSamples) {
  DecayFitOptions o;
  o.x_window = {3.0, 3.05};
  EXPECT_THROW(decay_fit(profile(), o), InsufficientDataError);
}
