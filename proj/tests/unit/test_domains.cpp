#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "cusp/domains.hpp"
#include "cusp/errors.hpp"
#include "oracle_values.hpp"

using namespace cusp;

TEST(ExpCusp, RadiusMatchesDefinition) {
  const ExpCuspDomain d;
  EXPECT_NEAR(d.r0 * d.r0, 1.0 + std::exp(-2.0), 1e-15);
}

TEST(ExpCusp, Membership) {
  EXPECT_TRUE(contains_exp({0.5, 0.0}));
  EXPECT_FALSE(contains_exp({0.5, std::exp(-2.0)}));
  EXPECT_TRUE(contains_exp({3.0, 0.0}));
  EXPECT_FALSE(contains_exp({0.0, 0.0}));
  EXPECT_FALSE(contains_exp({-0.1, 0.0}));
}

TEST(PowerCusp, Membership) {
  const PowerCuspDomain d(1.0);
  EXPECT_TRUE(contains_power({0.5, 0.0}, d));
  EXPECT_FALSE(contains_power({0.5, 0.25}, d));
  EXPECT_TRUE(contains_power({4.0, 0.0}, d));
  EXPECT_NEAR(d.radius(), std::sqrt(5.0), 1e-15);
  EXPECT_THROW(PowerCuspDomain(0.0), DomainError);
}

TEST(BoundaryArc, SamplesLieOnTheBoundaryWithinT) {
  const BoundaryArc arc = boundary_arc(0.1, 64);
  ASSERT_EQ(arc.samples.size(), 128u);
  for (const PlanePoint& p : arc.samples) {
    EXPECT_LE(p.norm(), 0.1);
    EXPECT_NEAR(std::abs(p.x2), std::exp(-1.0 / p.x1), 1e-12);
    EXPECT_FALSE(contains_exp(p));
    // Just inside the boundary is inside the domain.
    EXPECT_TRUE(contains_exp({p.x1, p.x2 * (1 - 1e-9)}) || p.x2 == 0.0);
  }
  for (std::size_t k = 1; k < 64; ++k) EXPECT_GT(arc.samples[k].x1, arc.samples[k - 1].x1);
  EXPECT_THROW(boundary_arc(0.6, 8), DomainError);
  EXPECT_THROW(boundary_arc(0.1, 1), DomainError);
}

TEST(BoundaryArc, EndpointMatchesOracle) {
  EXPECT_NEAR(arc_x1_max(0.1) / oracle::x1_max_0p1, 1.0, 1e-14);
  EXPECT_NEAR(arc_x1_max(0.3) / oracle::x1_max_0p3, 1.0, 1e-14);
  for (double t : {0.05, 0.02}) {
    EXPECT_LE((t - arc_x1_max(t)) / t, std::exp(-2.0 / t) / (t * t) + 1e-15);
  }
}

TEST(BoundaryArc, DiameterIsPairwiseMaximum) {
  const std::vector<PlanePoint> two{{0.0, 0.0}, {3.0, 4.0}};
  EXPECT_DOUBLE_EQ(arc_diameter(two), 5.0);
  const BoundaryArc arc = boundary_arc(0.1, 64);
  EXPECT_NEAR(arc_diameter(arc), arc_x1_max(0.1), 1e-6);
}

TEST(BoundaryArc, DiameterAgreesWithHullExtremes) {
  // For points on the two branches the farthest pair involves a hull vertex:
  // compare against a scan over the upper and lower chain endpoints.
  const BoundaryArc arc = boundary_arc(0.2, 200);
  double hull = 0.0;
  for (const PlanePoint& a : arc.samples) {
    for (const PlanePoint& b : {arc.samples.front(), arc.samples[199], arc.samples[200],
                                arc.samples.back()}) {
      hull = std::max(hull, std::hypot(a.x1 - b.x1, a.x2 - b.x2));
    }
  }
  EXPECT_DOUBLE_EQ(arc_diameter(arc), hull);
}

TEST(BoundaryArc, DiameterMonotoneAndTendsToT) {
  double prev = 0.0;
  for (double t : {0.02, 0.05, 0.1}) {
    const double d = arc_diameter(boundary_arc(t, 64));
    EXPECT_GE(d, prev);
    prev = d;
  }
  for (int k = 10; k <= 20; ++k) {
    const double t = std::ldexp(1.0, -k);
    const double ratio = arc_diameter(boundary_arc(t, 32)) / t;
    EXPECT_LE(ratio, 1.0);
    EXPECT_GE(ratio, 1.0 - 1e-6);
  }
}

TEST(PreimageArc, MatchesOracleAndIsMonotone) {
  const MapChain chain;
  const LogLength d = preimage_arc_diameter(0.05, chain, 64);
  EXPECT_NEAR(d.log_value / oracle::log_diam_preimage_0p05, 1.0, 1e-12);
  EXPECT_EQ(d.value, 0.0);  // far below the double range
  const ImageArc arc = image_boundary_arc(0.05, chain, 64);
  EXPECT_NEAR(arc.s_max / oracle::image_arc_s_max_0p05, 1.0, 1e-12);
  double prev = -INFINITY;
  for (double t : {0.01, 0.05, 0.1, 0.3}) {
    const double lv = preimage_arc_diameter(t, chain, 32).log_value;
    EXPECT_GE(lv, prev);
    prev = lv;
  }
  EXPECT_LE(preimage_arc_diameter(0.45, chain, 32).value, 2.0);
}

TEST(PreimageArc, AgreesWithDirectPullbackWhereRepresentable) {
  const MapChain chain;
  const double t = 0.3;
  const ImageArc arc = image_boundary_arc(t, chain, 48);
  std::vector<PlanePoint> pulled{{-1.0, 0.0}};
  for (const PlanePoint& y : arc.samples) {
    try {
      pulled.push_back(apply_chain_inv(y, chain));
    } catch (const RangeError&) {
      pulled.push_back({-1.0, 0.0});  // preimage within rounding of the tip
    }
  }
  const double direct = arc_diameter(pulled);
  EXPECT_NEAR(preimage_arc_diameter(t, chain, 48).value / direct, 1.0, 1e-9);
}

TEST(PreimageArc, Reproducible) {
  const MapChain chain;
  EXPECT_EQ(preimage_arc_diameter(0.05, chain, 64).log_value,
            preimage_arc_diameter(0.05, chain, 64).log_value);
}
