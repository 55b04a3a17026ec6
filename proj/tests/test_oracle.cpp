#include <gtest/gtest.h>

#include <cmath>

#include "isoperim/oracle.hpp"

using namespace isoperim;

namespace {

SupportFourier cos2(double eps) { return SupportFourier(1.0, {0.0, eps}, {0.0, 0.0}); }

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST(SampleTrace, ShapeAndGrid) {
  const auto tr = sample_trace(cos2(0.1), 256);
  EXPECT_EQ(tr.size(), 256u);
  EXPECT_EQ(tr.gamma.size(), 256u);
  EXPECT_EQ(tr.rho_beta.size(), 256u);
  for (std::size_t k = 1; k < tr.size(); ++k) EXPECT_GT(tr.thetas[k], tr.thetas[k - 1]);
  EXPECT_THROW(sample_trace(cos2(0.1), 255), std::invalid_argument);
}

TEST(SampleTrace, ParametricRadiiMatchSupportFormulas) {
  const auto c = random_convex_curve(12, 8, 2.5, 0.05);
  const auto tr = sample_trace(c, 512);
  for (std::size_t k = 0; k < tr.size(); k += 7) {
    const double t = tr.thetas[k];
    EXPECT_NEAR(tr.rho[k], curvature_radius(c, t), 1e-12);
    EXPECT_NEAR(tr.rho_beta[k], std::abs(eval_support(c, t, 1) + eval_support(c, t, 3)), 1e-11);
    EXPECT_NEAR((tr.gamma[k] - boundary_point(c, t)).norm(), 0.0, 1e-14);
    EXPECT_NEAR((tr.beta[k] - evolute_point(c, t)).norm(), 0.0, 1e-14);
  }
}

TEST(OracleQuantities, UnitDiskExact) {
  const auto q = oracle_quantities(SupportFourier::disk(1.0), 512);
  EXPECT_EQ(q.provenance, Provenance::oracle);
  EXPECT_NEAR(q.L, kTwoPi, 1e-13);
  EXPECT_NEAR(q.A, kPi, 1e-13);
  EXPECT_NEAR(q.A_tilde, 0.0, 1e-13);
  EXPECT_NEAR(q.int_rho_sq, kTwoPi, 1e-13);
  EXPECT_NEAR(q.int_rho_beta_sq, 0.0, 1e-13);
  EXPECT_NEAR(q.rho_e, 1.0, 1e-13);
  EXPECT_NEAR(q.rho_i, 1.0, 1e-13);
  EXPECT_NEAR(q.rho_M, 1.0, 1e-13);
  EXPECT_NEAR(q.rho_m, 1.0, 1e-13);
  EXPECT_NEAR(q.int_kappa_sq_ds, kTwoPi, 1e-13);
}

TEST(OracleQuantities, SecondModeMatchesSpectral) {
  const auto c = cos2(0.1);
  const auto o = oracle_quantities(c, 2048);
  const auto s = spectral_quantities(c);
  EXPECT_LE(rel(o.L, s.L), 1e-10);
  EXPECT_LE(rel(o.A, s.A), 1e-10);
  EXPECT_LE(rel(o.A_tilde, s.A_tilde), 1e-10);
  EXPECT_LE(rel(o.int_rho_sq, s.int_rho_sq), 1e-10);
  EXPECT_LE(rel(o.int_rho_beta_sq, s.int_rho_beta_sq), 1e-10);
}

TEST(OracleQuantities, GridRefinementSelfConsistent) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto c = random_convex_curve(seed, 8, 2.5, 0.05);
    const auto a = oracle_quantities(c, 2048);
    const auto b = oracle_quantities(c, 4096);
    EXPECT_LE(rel(a.L, b.L), 1e-10);
    EXPECT_LE(rel(a.A, b.A), 1e-10);
    EXPECT_LE(rel(a.A_tilde, b.A_tilde), 1e-10);
    EXPECT_LE(rel(a.int_rho_sq, b.int_rho_sq), 1e-10);
    EXPECT_LE(rel(a.int_rho_beta_sq, b.int_rho_beta_sq), 1e-10);
    EXPECT_LE(rel(a.int_kappa_sq_ds, b.int_kappa_sq_ds), 1e-10);
    EXPECT_LE(rel(a.rho_M, b.rho_M), 1e-10);
    EXPECT_LE(rel(a.rho_m, b.rho_m), 1e-10);
  }
}

TEST(OracleQuantities, OrientationSigns) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto q = oracle_quantities(random_convex_curve(seed, 8, 2.5, 0.05), 2048);
    EXPECT_GT(q.A, 0.0);
    EXPECT_LE(q.A_tilde, 1e-12);
  }
}

TEST(OracleQuantities, RejectsCoarseGrid) {
  const auto c = random_convex_curve(1, 12, 2.5, 0.05);
  EXPECT_THROW(oracle_quantities(c, 32 * 12 - 1), std::invalid_argument);
}

TEST(CrossCheck, UnitDisk) {
  const auto r = cross_check(SupportFourier::disk(1.0), 1e-9);
  EXPECT_TRUE(r.pass);
  EXPECT_LE(r.max_delta, 1e-13);
  EXPECT_EQ(r.deltas.size(), 11u);
}

TEST(CrossCheck, SecondMode) { EXPECT_TRUE(cross_check(cos2(0.1), 1e-9).pass); }

TEST(CrossCheck, RandomCurves) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto r = cross_check(random_convex_curve(seed, 8, 2.5, 0.05), 1e-8);
    EXPECT_TRUE(r.pass) << "seed " << seed << " max delta " << r.max_delta;
  }
}

TEST(CrossCheck, HigherOrderCurves) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto r = cross_check(random_convex_curve(seed, 12, 2.2, 0.05), 1e-8);
    EXPECT_TRUE(r.pass) << "seed " << seed << " max delta " << r.max_delta;
  }
}
