#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "anls/errors.hpp"
#include "anls/ground_state.hpp"
#include "anls/random_fields.hpp"
#include "anls/spectral.hpp"

using namespace anls;

namespace {

const Grid2D& box() {
  static const Grid2D g = Grid2D::square(256, 20.0);
  return g;
}

const GroundStateResult& ground(double p, double omega = 1.0) {
  static std::map<std::pair<double, double>, GroundStateResult> cache;
  auto it = cache.find({p, omega});
  if (it == cache.end()) {
    it = cache.emplace(std::pair{p, omega}, petviashvili_solve({p, omega}, box(), gaussian(box()))).first;
  }
  return it->second;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(Petviashvili, ConvergesForP4) {
  const auto& r = ground(4.0);
  EXPECT_LT(r.residual_l2, 1e-8);
  EXPECT_LT(r.pohozaev.max_abs(), 1e-6);
  EXPECT_LT(rel(r.norms.dx_sq, 2 * r.norms.dyy_sq), 1e-5);
  EXPECT_LT(rel(r.m_omega, 2.0 * (4 - 2) / (4 + 6) * r.norms.mass), 1e-5);
  EXPECT_NEAR(std::abs(r.profile(128, 128)), r.profile.max_abs(), 0.0);
  EXPECT_NEAR(r.profile(128, 128).imag(), 0.0, 1e-14);
  EXPECT_GT(r.profile(128, 128).real(), 0.0);
}

TEST(Petviashvili, PohozaevForP3AndFractional) {
  for (double p : {3.0, 14.0 / 3.0}) {
    const auto& r = ground(p);
    EXPECT_LT(r.residual_l2, 1e-8) << p;
    EXPECT_LT(r.pohozaev.max_abs(), 1e-4) << p;
    const double x_identity = 8 * r.norms.dx_sq - 4 * (p - 2) / p * r.norms.lp;
    EXPECT_LT(std::abs(x_identity) / r.norms.lp, 1e-6) << p;
  }
}

TEST(Petviashvili, RejectsNonPositiveOmega) {
  EXPECT_THROW(petviashvili_solve({4.0, 0.0}, box(), gaussian(box())), DomainError);
  EXPECT_THROW(petviashvili_solve({4.0, -1.0}, box(), gaussian(box())), DomainError);
  EXPECT_THROW(petviashvili_solve({2.0, 1.0}, box(), gaussian(box())), DomainError);
}

TEST(Petviashvili, IterationBudgetReported) {
  SolverOptions o;
  o.max_iter = 3;
  try {
    petviashvili_solve({4.0, 1.0}, box(), gaussian(box()), o);
    FAIL() << "expected NotConvergedError";
  } catch (const NotConvergedError& e) {
    EXPECT_EQ(e.iterations(), 3u);
    EXPECT_GT(e.residual(), 1e-8);
  }
}

TEST(Petviashvili, DealiasedSolveMeetsTruncatedEquation) {
  SolverOptions o;
  o.dealias = true;
  const auto r = petviashvili_solve({4.0, 1.0}, box(), gaussian(box()), o);
  EXPECT_LT(r.residual_l2, 1e-8);
  EXPECT_LT(rel(r.norms.mass, ground(4.0).norms.mass), 1e-4);
}

TEST(GroundStateSearch, RestartsAgree) {
  const auto s = ground_state_search({4.0, 1.0}, box(), 3, 99);
  EXPECT_EQ(s.j_values.size() + s.failures, 3u);
  EXPECT_FALSE(s.discrepancy);
  for (double j : s.j_values) EXPECT_LT(rel(j, s.best.m_omega), 1e-6);
}

TEST(GroundState, MassScalingInOmega) {
  const double p = 4.0;
  const double m1 = ground(p).norms.mass;
  double prev = 0.0;
  for (double w : {0.5, 1.0, 2.0, 4.0}) {
    const auto& r = ground(p, w);
    EXPECT_LT(rel(r.norms.mass, std::pow(w, (14 - 3 * p) / (4 * (p - 2))) * m1), 1e-4) << w;
    EXPECT_GT(r.m_omega, prev);
    prev = r.m_omega;
  }
}

TEST(GnConstant, ClosedFormIndependentOfOmegaAndBox) {
  const double c1 = gn_constant_from_ground_state(ground(4.0));
  EXPECT_NEAR(c1, ground(4.0).c_opt_estimate, 1e-12);
  EXPECT_LT(rel(gn_constant_from_ground_state(ground(4.0, 2.0)), c1), 1e-4);
  const Grid2D big = Grid2D::square(512, 30.0);
  const auto r = petviashvili_solve({4.0, 1.0}, big, gaussian(big));
  EXPECT_LT(rel(gn_constant_from_ground_state(r), c1), 1e-3);
}

TEST(GnConstant, QuotientOfGroundStateEqualsClosedForm) {
  for (double p : {3.0, 4.0, 14.0 / 3.0}) {
    const auto& r = ground(p);
    EXPECT_LT(rel(gn_quotient(r.norms, p), gn_constant_from_ground_state(r)), 1e-7) << p;
  }
}

TEST(GnConstant, CriticalMassThreshold) {
  const double c = 0.2;
  EXPECT_NEAR(critical_mass_threshold(c), std::pow(7.0 / (3.0 * c), 3.0 / 8.0), 1e-15);
}

TEST(GnConstant, InequalityHoldsForRandomFields) {
  const double p = 4.0;
  const double c_opt = gn_constant_from_ground_state(ground(p));
  const Grid2D g = Grid2D::square(128, 20.0);
  Rng rng(5);
  for (int k = 0; k < 200; ++k) {
    const Field f = random_smooth_field(g, rng);
    EXPECT_LE(gn_quotient(f, p), c_opt * (1 + 1e-9));
  }
}

TEST(GnConstant, MaximizeApproachesClosedForm) {
  const double p = 4.0;
  const double c_opt = gn_constant_from_ground_state(ground(p));
  QuotientSearchOptions o;
  o.rng_seed = 3;
  const auto q = gn_quotient_maximize(p, box(), 2, o);
  EXPECT_LE(q.best, c_opt * 1.01);
  EXPECT_GE(q.best, c_opt * 0.99);
  EXPECT_EQ(q.per_restart.size(), 2u);
  EXPECT_LT(rel(gn_quotient(scale_aniso(q.best_field, 1.7, 1.1, 1.2), p), q.best), 1e-7);
}

TEST(GradientFlow, SubcriticalMinimizerAndFeedback) {
  const Grid2D g(512, 256, 200.0, 80.0);
  const double c = 1.0;
  const auto m = gradient_flow_solve(c, 3.0, g, gaussian(g, 0.5, 6.0, 3.0));
  EXPECT_LT(m.energy, 0.0);
  EXPECT_NEAR(m.result.norms.mass, c, 1e-9);
  EXPECT_GT(m.omega_c, 0.0);
  const auto w = petviashvili_solve({3.0, m.omega_c}, g, m.result.profile);
  EXPECT_LT(rel(w.norms.mass, c), 1e-4);
}

TEST(Rearrangement, PreservesMassAndImprovesNorms) {
  Rng rng(21);
  const Grid2D g = Grid2D::square(128, 10.0);
  for (int k = 0; k < 5; ++k) {
    const Field f = random_smooth_field(g, rng);
    const auto n = spectral_norms(f, 4.0);
    for (Axis a : {Axis::x, Axis::y}) {
      const auto r = spectral_norms(fourier_rearrange(f, a), 4.0);
      EXPECT_LT(rel(r.mass, n.mass), 1e-12);
      EXPECT_GE(r.lp, n.lp * (1 - 1e-10));
    }
    EXPECT_LE(spectral_norms(fourier_rearrange(f, Axis::y), 4.0).dyy_sq, n.dyy_sq * (1 + 1e-10));
    EXPECT_LE(spectral_norms(fourier_rearrange(f, Axis::x), 4.0).dx_sq, n.dx_sq * (1 + 1e-10));
  }
}

TEST(Rearrangement, Idempotent) {
  Rng rng(4);
  const Grid2D g = Grid2D::square(64, 8.0);
  const Field once = fourier_rearrange(random_smooth_field(g, rng), Axis::y);
  const Field twice = fourier_rearrange(once, Axis::y);
  EXPECT_LT(max_abs_diff(once, twice) / once.max_abs(), 1e-12);
}

TEST(Symmetry, GroundStateIsAxial) {
  const auto s = symmetry_report(ground(4.0));
  EXPECT_LT(s.x_reflection_asymmetry, 1e-6);
  EXPECT_LT(s.y_reflection_asymmetry, 1e-6);
  const auto s3 = symmetry_report(ground(3.0));
  EXPECT_LT(s3.x_reflection_asymmetry, 1e-6);
  RecordProperty("p3_y_asymmetry", std::to_string(s3.y_reflection_asymmetry));
}

TEST(Symmetry, ShiftInvariant) {
  const Field& u = ground(4.0).profile;
  const auto a = symmetry_report(u);
  const auto b = symmetry_report(std::polar(1.0, 2.0) * roll(u, 13, -29));
  EXPECT_NEAR(a.x_reflection_asymmetry, b.x_reflection_asymmetry, 1e-8);
  EXPECT_NEAR(a.y_reflection_asymmetry, b.y_reflection_asymmetry, 1e-8);
}

TEST(Symmetry, DetectsAsymmetry) {
  const Field f = Field::sample(box(), [](double x, double y) {
    return std::exp(-x * x - y * y) * (1.0 + 0.3 * std::tanh(x));
  });
  EXPECT_GT(symmetry_report(f).x_reflection_asymmetry, 1e-2);
  EXPECT_LT(symmetry_report(f).y_reflection_asymmetry, 1e-12);
}
