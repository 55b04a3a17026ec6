#include <gtest/gtest.h>

#include <cmath>

#include "isoperim/stability.hpp"

using namespace isoperim;

namespace {

SupportFourier cos2(double eps) { return SupportFourier(1.0, {0.0, eps}, {0.0, 0.0}); }

const double pi = kPi;

}  // namespace

TEST(SteinerDisk, Examples) {
  const auto a = steiner_disk(SupportFourier::disk(1.0));
  EXPECT_EQ(a.center.norm(), 0.0);
  EXPECT_EQ(a.radius, 1.0);
  const auto b = steiner_disk(SupportFourier(1.0, {0.3}, {0.2}));
  EXPECT_DOUBLE_EQ(b.center.x, 0.3);
  EXPECT_DOUBLE_EQ(b.center.y, 0.2);
  EXPECT_NEAR(b.center_quadrature.x, 0.3, 1e-12);
  EXPECT_NEAR(b.center_quadrature.y, 0.2, 1e-12);
  const auto c = steiner_disk(cos2(0.1));
  EXPECT_NEAR(c.center_quadrature.norm(), 0.0, 1e-12);
  EXPECT_EQ(c.radius, 1.0);
}

TEST(SteinerDisk, QuadratureMatchesCoefficients) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto c = translate(random_convex_curve(seed, 10, 2.5, 0.05), {0.1 * seed / 10.0, -0.3});
    const auto s = steiner_disk(c);
    EXPECT_NEAR(s.center_quadrature.x, s.center.x, 1e-12);
    EXPECT_NEAR(s.center_quadrature.y, s.center.y, 1e-12);
    EXPECT_NEAR(s.radius, spectral_quantities(c).L / kTwoPi, 1e-14);
  }
}

TEST(H1Distance, Examples) {
  const auto c = random_convex_curve(3, 8, 2.5, 0.05);
  EXPECT_EQ(h1_distance(c, c), 0.0);
  EXPECT_NEAR(h1_distance(cos2(0.1), SupportFourier::disk(1.0)), 0.1, 1e-14);
  const SupportFourier mixed(1.0, {0.0, 0.05, 0.0}, {0.0, 0.0, 0.02});
  const double h = h1_distance(mixed, SupportFourier::disk(1.0));
  EXPECT_GE(h, 0.05);
  EXPECT_LE(h, 0.07);
  // Dense-grid oracle.
  double dense = 0.0;
  for (double t : periodic_grid(1 << 16)) dense = std::max(dense, std::abs(0.05 * std::cos(2 * t) + 0.02 * std::sin(3 * t)));
  EXPECT_NEAR(h, dense, 1e-9);
  EXPECT_GE(h, dense);
}

TEST(H1Distance, PositiveForDistinctCurves) {
  const auto a = random_convex_curve(1, 8, 2.5, 0.05);
  const auto b = random_convex_curve(2, 8, 2.5, 0.05);
  EXPECT_GT(h1_distance(a, b), 0.0);
  EXPECT_EQ(h1_distance(a, b), h1_distance(b, a));
}

TEST(H2DistanceSq, Examples) {
  const auto c = random_convex_curve(3, 8, 2.5, 0.05);
  EXPECT_EQ(h2_distance_sq(c, c), 0.0);
  EXPECT_NEAR(h2_distance_sq(cos2(0.1), SupportFourier::disk(1.0)), 0.01 * pi, 1e-15);
}

TEST(H2DistanceSq, ParsevalMatchesQuadrature) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto a = random_convex_curve(seed, 8, 2.5, 0.05);
    const auto b = translate(random_convex_curve(seed + 1000, 5, 2.5, 0.05), {0.2, 0.1});
    const double p = h2_distance_sq(a, b);
    EXPECT_NEAR(h2_distance_sq_quadrature(a, b), p, 1e-10 * std::max(1.0, p));
  }
}

TEST(H2DistanceSq, SteinerDiskParseval) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto c = translate(random_convex_curve(seed, 8, 2.5, 0.05), {0.4, -0.1});
    const double expected = pi * c.series().mode_energy(2);
    EXPECT_NEAR(h2_distance_sq(c, steiner_disk_curve(c)), expected, 1e-12);
  }
}

TEST(StabilityConstants, Examples) {
  const auto px = stability_constants(preset(Preset::panxu));
  EXPECT_NEAR(px.C3, 1.0 / (18.0 * pi), 1e-14 / (18.0 * pi));
  EXPECT_EQ(px.C2, 1.0);
  EXPECT_NEAR(stability_constants(preset(Preset::iso_1_1)).C3, 1.0 / (6.0 * pi), 1e-15);
  const double d = 26 * pi - 8 * pi * pi;
  const auto c35 = stability_constants(preset(Preset::cor_3_5));
  EXPECT_EQ(c35.C2, 1.0);
  EXPECT_NEAR(c35.C3, kTwoPi / (3.0 * d), 1e-11);
  // D = 24 pi eps drops below 3/2 for small eps, where C2 exceeds 1.
  const double eps = 0.01;
  EXPECT_NEAR(stability_constants(preset(Preset::cor_3_6, eps)).C2, 3.0 / (2.0 * 24 * pi * eps), 1e-12);
}

TEST(StabilityConstants, UndefinedWithoutPositiveDiscriminant) {
  EXPECT_THROW(stability_constants(preset(Preset::cor_3_4)), UndefinedConstant);
  EXPECT_THROW(stability_constants(ParamSet{}), UndefinedConstant);
}

TEST(ClassifyStability, NamedPresets) {
  EXPECT_EQ(classify_stability(preset(Preset::cor_3_4)), StabilityClass::unstable);
  EXPECT_EQ(classify_stability(preset(Preset::cor_3_5)), StabilityClass::stable);
  EXPECT_EQ(classify_stability(preset(Preset::cor_3_6, 0.25)), StabilityClass::stable);
}

TEST(ClassifyStability, OtherRegimes) {
  EXPECT_EQ(classify_stability({0, 0, 0, 0, 0, 1, 0, 0}), StabilityClass::indeterminate);
  EXPECT_EQ(classify_stability(preset(Preset::cor_3_6, 0.0)), StabilityClass::indeterminate);
  EXPECT_EQ(classify_stability(ParamSet{}), StabilityClass::unstable);
  EXPECT_EQ(classify_stability(preset(Preset::gao_1_7)), StabilityClass::unstable);
}

TEST(VerifyStability, PanxuEqualityCase) {
  const auto r = verify_stability(preset(Preset::panxu), cos2(0.1), 1e-8);
  EXPECT_NEAR(r.h2_sq, 0.01 * pi, 1e-14);
  EXPECT_NEAR(r.C3 * r.W, 0.01 * pi, 1e-10);
  EXPECT_TRUE(r.bound_1_15_ok);
  EXPECT_NEAR(r.h1_sq, 0.01, 1e-14);
  EXPECT_NEAR(r.C2 * r.W, 0.18 * pi * pi, 1e-10);
  EXPECT_TRUE(r.bound_1_14_ok);
}

TEST(VerifyStability, UnitDisk) {
  const auto r = verify_stability(preset(Preset::panxu), SupportFourier::disk(1.0), 1e-8);
  EXPECT_NEAR(r.W, 0.0, 1e-12);
  EXPECT_NEAR(r.h1, 0.0, 1e-15);
  EXPECT_EQ(r.h2_sq, 0.0);
  EXPECT_TRUE(r.bound_1_14_ok && r.bound_1_15_ok);
}

TEST(VerifyStability, TranslatedCurveUsesSteinerDisk) {
  const auto c = random_convex_curve(4, 8, 2.5, 0.05);
  const auto a = verify_stability(preset(Preset::cor_3_3), c, 1e-8);
  const auto b = verify_stability(preset(Preset::cor_3_3), translate(c, {1.0, 2.0}), 1e-8);
  EXPECT_NEAR(a.h1, b.h1, 1e-12);
  EXPECT_NEAR(a.h2_sq, b.h2_sq, 1e-12);
  EXPECT_NEAR(a.W, b.W, 1e-9 * std::abs(a.W));
  EXPECT_NEAR(b.steiner.center.x, 1.0 + c.a(1), 1e-15);
}

TEST(VerifyStability, RequiresPositiveDiscriminant) {
  EXPECT_THROW(verify_stability(preset(Preset::cor_3_4), cos2(0.1), 1e-8), ConditionNotMet);
  EXPECT_THROW(verify_stability({0, 0, 0, 0, 0, 1, 0, 0}, cos2(0.1), 1e-8), ConditionNotMet);
}

TEST(VerifyStability, BoundsOnRandomCurves) {
  for (Preset name : kAllPresets) {
    const auto p = preset(name, 0.25);
    if (!check_conditions(p).ok_1_13) continue;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      const auto r = verify_stability(p, random_convex_curve(seed, 8, 2.5, 0.05), 1e-8);
      EXPECT_TRUE(r.bound_1_14_ok) << to_string(name) << " seed " << seed;
      EXPECT_TRUE(r.bound_1_15_ok) << to_string(name) << " seed " << seed;
      EXPECT_GE(r.C2, 1.0);
    }
  }
}

TEST(InstabilityWitness, Examples) {
  const auto p = preset(Preset::cor_3_4);
  for (double eps : {0.1, 0.2}) {
    const auto w = instability_witness(p, eps);
    EXPECT_LE(w.W, 1e-9);
    EXPECT_NEAR(w.h2_sq, pi * eps * eps, 1e-12);
  }
  EXPECT_THROW(instability_witness(preset(Preset::cor_3_5), 0.1), ConditionNotMet);
  EXPECT_THROW(instability_witness(p, 0.0), std::invalid_argument);
  EXPECT_THROW(instability_witness(p, 1.0 / 3.0), std::invalid_argument);
}
