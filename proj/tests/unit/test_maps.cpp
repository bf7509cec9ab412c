#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "cusp/errors.hpp"
#include "cusp/maps.hpp"
#include "oracle_values.hpp"

using namespace cusp;

namespace {

constexpr double kPi = std::numbers::pi;

double dist(const PlanePoint& a, const PlanePoint& b) { return std::hypot(a.x1 - b.x1, a.x2 - b.x2); }

}  // namespace

TEST(Polar, SectorConvention) {
  EXPECT_EQ(PolarPoint::make(1.0, 0.0).sector, Sector::Inner);
  EXPECT_EQ(PolarPoint::make(1.0, kPi / 2).sector, Sector::Outer);
  EXPECT_EQ(PolarPoint::make(1.0, -kPi / 2).sector, Sector::Outer);
  EXPECT_DOUBLE_EQ(PolarPoint::make(1.0, -kPi / 2).theta, -kPi / 2);
  EXPECT_EQ(PolarPoint::make(1.0, 3 * kPi / 2).sector, Sector::Outer);
  EXPECT_NEAR(PolarPoint::make(1.0, 2 * kPi + 0.1).theta, 0.1, 1e-14);
}

TEST(Mobius, KnownValuesAndPoles) {
  const PlanePoint tip = mobius_f1({-1.0, 0.0});
  EXPECT_DOUBLE_EQ(tip.x1, 0.0);
  EXPECT_DOUBLE_EQ(tip.x2, 0.0);
  EXPECT_TRUE(mobius_f1({1.0, 0.0}).at_infinity);
  EXPECT_TRUE(mobius_f3({-1.0, 0.0}).at_infinity);
  const PlanePoint one = mobius_f3(PlanePoint::infinity());
  EXPECT_DOUBLE_EQ(one.x1, 1.0);
  // The unit circle goes to the imaginary axis.
  const PlanePoint on_axis = mobius_f1({std::cos(2.0), std::sin(2.0)});
  EXPECT_NEAR(on_axis.x1, 0.0, 1e-15);
}

TEST(Mobius, InversesRoundTrip) {
  for (const PlanePoint z : {PlanePoint{0.3, -0.2}, PlanePoint{-0.9, 0.1}, PlanePoint{2.0, 5.0}}) {
    EXPECT_LT(dist(mobius_f1_inv(mobius_f1(z)), z), 1e-14);
    EXPECT_LT(dist(mobius_f3_inv(mobius_f3(z)), z), 1e-14);
  }
}

TEST(CuspMap, OriginAndTipGoToOrigin) {
  const ProfileParams p;
  const PlanePoint o = cusp_map_f2(PlanePoint{0.0, 0.0}, p);
  EXPECT_EQ(o.x1, 0.0);
  EXPECT_EQ(o.x2, 0.0);
  const PlanePoint y = apply_chain({-1.0, 0.0}, MapChain());
  EXPECT_EQ(y.x1, 0.0);
  EXPECT_EQ(y.x2, 0.0);
}

TEST(CuspMap, ImageRadiusIsG) {
  const ProfileParams p;
  const PlanePoint w = cusp_map_f2(PolarPoint::make(1e-10, 2.0), p);
  EXPECT_NEAR(w.norm(), oracle::G_1em10, 1e-15);
}

TEST(CuspMap, SeamRaysLandOnTheCuspCurve) {
  const ProfileParams p;
  for (double r : {1e-1, 1e-5, 1e-40}) {
    const double g = eval_g(r, p);
    const PlanePoint up = cusp_map_f2(PolarPoint::make(r, kPi / 2), p);
    const PlanePoint down = cusp_map_f2(PolarPoint::make(r, -kPi / 2), p);
    EXPECT_NEAR(up.x1, g, 1e-15);
    EXPECT_NEAR(up.x2, std::exp(-1.0 / g), 1e-15);
    EXPECT_NEAR(down.x2, -std::exp(-1.0 / g), 1e-15);
  }
}

TEST(CuspMap, SeamContinuity) {
  const ProfileParams p;
  for (double r : {1e-12, 1e-3, 0.5}) {
    const PlanePoint a = cusp_map_f2(PolarPoint{r, kPi / 2, Sector::Inner}, p);
    const PlanePoint b = cusp_map_f2(PolarPoint{r, kPi / 2, Sector::Outer}, p);
    EXPECT_LT(dist(a, b), 1e-15);
    const PlanePoint c = cusp_map_f2(PolarPoint{r, -kPi / 2, Sector::Inner}, p);
    const PlanePoint d = cusp_map_f2(PolarPoint{r, 3 * kPi / 2, Sector::Outer}, p);
    EXPECT_LT(dist(c, d), 1e-15);
  }
}

TEST(CuspMap, InverseRoundTrip) {
  const ProfileParams p;
  for (double r : {1e-200, 1e-9, 0.3, 0.999, 3.0}) {
    for (double th : {-1.5, 0.0, 1.0, 1.5708, 2.0, 3.0, 4.5}) {
      const PolarPoint s = PolarPoint::make(r, th);
      const PolarPoint back = cusp_map_f2_inv(cusp_map_f2(s, p), p);
      EXPECT_NEAR(back.r / r, 1.0, 1e-12);
      EXPECT_NEAR(std::remainder(back.theta - s.theta, 2 * kPi), 0.0, 1e-12);
    }
  }
}

TEST(CuspMap, LogInverseReachesDeepRadii) {
  const ProfileParams p;
  // |w| = 0.01 has preimage radius 16 exp(-e^100) far below the double range.
  const LogPolarPoint q = cusp_map_f2_inv_log({0.01, 0.0}, p);
  EXPECT_NEAR(q.log_r / (std::log(16.0) - std::exp(100.0)), 1.0, 1e-6);
  EXPECT_THROW(cusp_map_f2_inv({0.01, 0.0}, p), RangeError);
}

TEST(Chain, RoundTripOnTheDisk) {
  const MapChain chain;
  for (int k = 0; k < 200; ++k) {
    const double rad = 0.99 * std::sqrt((k + 0.5) / 200.0);
    const double ang = 2.399963 * k;
    const PlanePoint x{rad * std::cos(ang), rad * std::sin(ang)};
    EXPECT_LT(dist(apply_chain_inv(apply_chain(x, chain), chain), x), 1e-12);
  }
}

TEST(Chain, ImageOfDiskLiesInHalfDisk) {
  const MapChain chain;
  for (int k = 0; k < 100; ++k) {
    const double rad = 0.999 * (k + 0.5) / 100.0;
    const PlanePoint y = apply_chain({rad * std::cos(1.3 * k), rad * std::sin(1.3 * k)}, chain);
    EXPECT_LT(std::hypot(y.x1 - 0.5, y.x2), 0.5 + 1e-12);
  }
}

TEST(Chain, ParseAndValidate) {
  EXPECT_EQ(MapChain::parse("f1").stages().size(), 1u);
  EXPECT_EQ(MapChain::parse("F1,f2,F3").stages().size(), 3u);
  EXPECT_EQ(MapChain::parse("all").stages().size(), 3u);
  EXPECT_THROW(MapChain::parse("f2,f1"), DomainError);
  EXPECT_THROW(MapChain::parse("f4"), DomainError);
  EXPECT_THROW(MapChain(ProfileParams{}, {}), DomainError);
  const MapChain f1 = MapChain::parse("f1");
  const PlanePoint y = apply_chain({0.2, 0.1}, f1);
  const PlanePoint z = mobius_f1({0.2, 0.1});
  EXPECT_EQ(y.x1, z.x1);
}

TEST(BoundaryTrace, ResidualMatchesOracle) {
  const std::vector<double> ts{1e-2};
  const auto trace = boundary_image_trace(ts);
  EXPECT_NEAR(trace[0].residual / oracle::boundary_residual_1em2, 1.0, 1e-10);
}

TEST(BoundaryTrace, FitIsStableAcrossWindows) {
  std::vector<double> ts;
  for (int k = 0; k <= 60; ++k) ts.push_back(std::pow(10.0, -4.0 + 3.0 * k / 60));
  const auto trace = boundary_image_trace(ts);
  const QuadraticFit a = fit_boundary_residual(trace, 1e-4, 1e-2);
  const QuadraticFit b = fit_boundary_residual(trace, 1e-3, 1e-1);
  EXPECT_NEAR(a.C, 1.0, 0.01);
  EXPECT_NEAR(b.C, 0.97, 0.02);
  EXPECT_THROW(fit_boundary_residual(trace, 0.5, 0.9), DomainError);
}
