#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "cusp/errors.hpp"
#include "cusp/theorem1.hpp"
#include "oracle_values.hpp"

using namespace cusp;

namespace {

Theorem1Config low_res(WeightKind w = WeightKind::InverseK, int resolution = 32) {
  Theorem1Config cfg;
  cfg.solver.resolution = resolution;
  cfg.weight = w;
  cfg.arc_samples = 32;
  return cfg;
}

}  // namespace

TEST(Theorem1, DiskExpIntegralMatchesHighPrecision) {
  EXPECT_NEAR(log_disk_exp_integral(1.0, MapChain()), oracle::log_disk_exp_integral_1, 1e-6);
}

TEST(Theorem1, CapacityIsMonotoneAndFinite) {
  const std::vector<double> ts{0.125, 0.0625, 0.03125};
  const Theorem1Report rep = theorem1_experiment(ts, MapChain(), low_res());
  ASSERT_EQ(rep.rows.size(), 3u);
  EXPECT_TRUE(rep.capacity_monotone);
  for (const auto& row : rep.rows) {
    EXPECT_TRUE(std::isfinite(row.log_capacity));
    EXPECT_GT(row.rho_t, 0.0);
    EXPECT_LE(row.diam_model_arc, row.t);
    EXPECT_LE(row.diam_image_arc, row.t * (1 + 1e-9));
    EXPECT_GE(row.capacity, row.capala_bound);
    EXPECT_GT(row.iterations, 0);
  }
  for (std::size_t k = 1; k < rep.rows.size(); ++k) {
    EXPECT_GT(rep.rows[k].rho_t, rep.rows[k - 1].rho_t);
  }
}

TEST(Theorem1, UnitWeightFollowsTheLogarithmicLaw) {
  // With unit weight the condenser is conformally a strip of width pi and
  // length ~rho_t, so capacity * rho_t / pi tends to 1.
  const std::vector<double> ts{0.25, 0.2, 0.15};
  const Theorem1Report rep = theorem1_experiment(ts, MapChain(), low_res(WeightKind::Unit, 64));
  for (const auto& row : rep.rows) {
    EXPECT_NEAR(row.capacity * row.rho_t / std::numbers::pi, 1.0, 0.2) << "t=" << row.t;
  }
}

TEST(Theorem1, RefinementIsStable) {
  const std::vector<double> ts{0.125};
  const double a = theorem1_experiment(ts, MapChain(), low_res(WeightKind::InverseK, 64)).rows[0].log_capacity;
  const double b = theorem1_experiment(ts, MapChain(), low_res(WeightKind::InverseK, 128)).rows[0].log_capacity;
  EXPECT_LT(std::abs(std::exp(b - a) - 1.0), 5e-3);
}

TEST(Theorem1, Reproducible) {
  const std::vector<double> ts{0.125, 0.0625};
  const Theorem1Report a = theorem1_experiment(ts, MapChain(), low_res());
  const Theorem1Report b = theorem1_experiment(ts, MapChain(), low_res());
  for (std::size_t k = 0; k < ts.size(); ++k) {
    EXPECT_EQ(a.rows[k].log_capacity, b.rows[k].log_capacity);
  }
}

TEST(Theorem1, RejectsBadInputs) {
  const std::vector<double> up{0.1, 0.2};
  EXPECT_THROW(theorem1_experiment(up, MapChain(), low_res()), DomainError);
  const std::vector<double> ok{0.1};
  EXPECT_THROW(theorem1_experiment(ok, MapChain::parse("f1,f2"), low_res()), DomainError);
  const std::vector<double> big{0.6};
  EXPECT_THROW(theorem1_experiment(big, MapChain(), low_res()), DomainError);
}
