#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "cusp/capacity.hpp"
#include "cusp/domains.hpp"
#include "cusp/errors.hpp"
#include "oracle_values.hpp"

using namespace cusp;

namespace {

constexpr double kPi = std::numbers::pi;

GridSolverConfig solver(int resolution) {
  GridSolverConfig cfg;
  cfg.resolution = resolution;
  return cfg;
}

}  // namespace

TEST(LipTest, IntegralMatchesHighPrecision) {
  EXPECT_NEAR(log_exp_inv_integral(std::ldexp(1.0, -10), 0.5) / oracle::log_lip_integral_2em10,
              1.0, 1e-13);
  EXPECT_NEAR(log_exp_inv_integral(1e-3, std::ldexp(1.0, -9)) / oracle::log_lip_integral_1em3_2em9,
              1.0, 1e-13);
  EXPECT_NEAR(lip_test_energy(0.2, 1.0).value / oracle::lip_energy_r0p2_d1, 1.0, 1e-12);
  EXPECT_THROW(log_exp_inv_integral(0.3, 0.2), DomainError);
}

TEST(LipTest, ExactEnergyIsTwiceClosedForm) {
  const CapacityEstimate a = lip_test_energy(1e-3, 1.0);
  const CapacityEstimate b = lip_test_exact_energy(1e-3, 1.0);
  EXPECT_NEAR(b.log_value - a.log_value, std::log(2.0), 1e-12);
  EXPECT_EQ(a.method, CapacityMethod::ClosedForm);
}

TEST(LipTest, ValuesAndDomain) {
  const LipTestFn fn{0.1, 1.0};
  EXPECT_EQ(lip_test_value({0.05, 0.0}, fn), 1.0);
  EXPECT_EQ(lip_test_value({0.6, 0.0}, fn), 0.0);
  const double mid = lip_test_value({0.3, 0.0}, fn);
  EXPECT_GT(mid, 0.0);
  EXPECT_LT(mid, 1.0);
  EXPECT_GT(lip_test_value({0.2, 0.0}, fn), mid);
  EXPECT_THROW(lip_test_value({0.3, 0.3}, fn), DomainError);
  EXPECT_THROW((LipTestFn{0.6, 1.0}.validate()), DomainError);
  EXPECT_THROW((LipTestFn{0.1, 2.0}.validate()), DomainError);
}

TEST(LipTest, DiscreteEnergyConvergesToExact) {
  const double exact = lip_test_exact_energy(0.05, 1.0).value;
  const double coarse = lip_test_discrete_energy(0.05, 1.0, 64).value;
  const double fine = lip_test_discrete_energy(0.05, 1.0, 1024).value;
  EXPECT_NEAR(fine / exact, 1.0, 0.05);
  EXPECT_LE(std::abs(fine / exact - 1.0), std::abs(coarse / exact - 1.0) + 1e-12);
}

TEST(Decay, EnergyBeatsEveryPower) {
  const std::vector<double> s_list{0.5, 1.0, 2.0, 5.0, 10.0};
  const std::vector<double> r_list{0.1, 0.05, 0.02, 0.01, 0.005, 0.002, 0.001};
  const DecayReport rep = superpoly_decay_check(s_list, r_list);
  EXPECT_TRUE(rep.pass);
  ASSERT_EQ(rep.series.size(), 5u);
  for (const auto& s : rep.series) EXPECT_TRUE(s.pass) << "s=" << s.s;
}

TEST(Decay, PowerEnergyFailsTheCheck) {
  const std::vector<double> s_list{1.0, 3.0};
  const std::vector<double> r_list{0.1, 0.01, 1e-3, 1e-4, 1e-5};
  const DecayReport rep =
      superpoly_decay_check(s_list, r_list, [](double r) { return 2.0 * std::log(r); });
  EXPECT_FALSE(rep.pass);
  EXPECT_TRUE(rep.series[0].pass);   // r^2 / r decays
  EXPECT_FALSE(rep.series[1].pass);  // r^2 / r^3 grows
}

TEST(Decay, RejectsBadRadii) {
  const std::vector<double> s_list{1.0};
  const std::vector<double> few{0.1, 0.05, 0.02};
  const std::vector<double> unsorted{0.1, 0.2, 0.05, 0.01};
  const std::vector<double> big{0.3, 0.2, 0.1, 0.05};
  EXPECT_THROW(superpoly_decay_check(s_list, few), DomainError);
  EXPECT_THROW(superpoly_decay_check(s_list, unsorted), DomainError);
  EXPECT_THROW(superpoly_decay_check(s_list, big), DomainError);
}

TEST(GridCapacity, AnnulusConvergesAtSecondOrder) {
  const double exact = 2 * kPi / std::log(4.0);
  const double e128 = std::abs(annulus_capacity(0.25, 1.0, solver(128)).value - exact) / exact;
  const double e256 = std::abs(annulus_capacity(0.25, 1.0, solver(256)).value - exact) / exact;
  EXPECT_LT(e256, 1e-3);
  EXPECT_GT(e128 / e256, 3.0);
}

TEST(GridCapacity, WeightScalesLinearly) {
  const double a = annulus_capacity(0.25, 1.0, solver(64), 1.0).value;
  const double b = annulus_capacity(0.25, 1.0, solver(64), 2.5).value;
  EXPECT_NEAR(b / a, 2.5, 1e-12);
}

TEST(GridCapacity, MaskErrors) {
  const GridBox box;
  const PlaneWeight one = [](const PlanePoint&) { return 1.0; };
  const PlanePredicate everywhere = [](const PlanePoint&) { return true; };
  const PlanePredicate left = [](const PlanePoint& p) { return p.x1 < 0.0; };
  const PlanePredicate right = [](const PlanePoint& p) { return p.x1 >= 0.0; };
  const PlanePredicate nowhere = [](const PlanePoint&) { return false; };
  EXPECT_THROW(grid_capacity(one, left, right, everywhere, box, solver(32)), MaskError);
  EXPECT_THROW(grid_capacity(one, nowhere, right, everywhere, box, solver(32)), MaskError);
  EXPECT_THROW(grid_capacity(one, left, left, everywhere, box, solver(32)), MaskError);
}

TEST(GridCapacity, ParallelPlates) {
  // Plates at x1 <= -0.5 and x1 >= 0.5 in the unit square: capacity 2 / 1.
  const GridBox box{-1.0, 1.0, -0.5, 0.5};
  const PlaneWeight one = [](const PlanePoint&) { return 1.0; };
  const PlanePredicate f = [](const PlanePoint& p) { return p.x1 <= -0.5; };
  const PlanePredicate e = [](const PlanePoint& p) { return p.x1 >= 0.5; };
  const PlanePredicate all = [](const PlanePoint&) { return true; };
  const CapacityEstimate c = grid_capacity(one, f, e, all, box, solver(64));
  EXPECT_NEAR(c.value, 1.0, 1e-8);
  EXPECT_EQ(c.method, CapacityMethod::GridSolve);
}

TEST(Bounds, ClosedForms) {
  const double L = kPi / 4 * std::exp(2.0);
  EXPECT_NEAR(capala_lower_bound(1.0, L, 1.0), 1.0, 1e-12);
  EXPECT_NEAR(capala_lower_bound_log(1.0, std::log(L), 0.0), 1.0, 1e-12);
  EXPECT_THROW(capala_lower_bound(1.0, 0.1, 1.0), DomainError);
  const LogValue d = diamarvio_bound(0.1, 1.0, 1.0);
  EXPECT_NEAR(d.log_value, -100.0, 1e-10);
  EXPECT_NEAR(d.value, std::exp(-100.0), 1e-55);
}

TEST(ExpCuspCondenser, CapacityDecreasesAsTheTipRecedes) {
  // F near the mouth, E the cusp region x1 <= a; smaller a must not raise the capacity.
  const GridBox box{0.0, 0.5, -0.25, 0.25};
  const PlaneWeight one = [](const PlanePoint&) { return 1.0; };
  const PlanePredicate dom = [](const PlanePoint& p) { return contains_exp(p) && p.x1 <= 0.5; };
  const PlanePredicate f = [](const PlanePoint& p) { return p.x1 >= 0.45; };
  double prev = INFINITY;
  for (double a : {0.3, 0.25, 0.2}) {
    const PlanePredicate e = [a](const PlanePoint& p) { return p.x1 <= a; };
    const double c = grid_capacity(one, f, e, dom, box, solver(256)).value;
    EXPECT_LT(c, prev);
    prev = c;
  }
}
