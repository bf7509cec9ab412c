#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "cusp/errors.hpp"
#include "cusp/radial_profile.hpp"
#include "oracle_values.hpp"

using namespace cusp;

namespace {

void expect_rel(double got, double want, double tol) {
  EXPECT_NEAR(got / want, 1.0, tol) << "got " << got << " want " << want;
}

struct ProfileCase {
  double r;
  double g, H, G, rGp;
};

}  // namespace

TEST(RadialProfile, MatchesHighPrecisionValues) {
  const ProfileParams p;
  const ProfileCase cases[] = {
      {1e-1, oracle::g_1em1, oracle::H_1em1, oracle::G_1em1, oracle::rGprime_1em1},
      {1e-5, oracle::g_1em5, oracle::H_1em5, oracle::G_1em5, oracle::rGprime_1em5},
      {1e-10, oracle::g_1em10, oracle::H_1em10, oracle::G_1em10, oracle::rGprime_1em10},
      {1e-50, oracle::g_1em50, oracle::H_1em50, oracle::G_1em50, oracle::rGprime_1em50},
      {1e-300, oracle::g_1em300, oracle::H_1em300, oracle::G_1em300, oracle::rGprime_1em300},
  };
  for (const auto& c : cases) {
    const ProfileEval e = eval_profile(c.r, p);
    expect_rel(e.g, c.g, 1e-14);
    expect_rel(e.H, c.H, 1e-13);
    expect_rel(e.G, c.G, 1e-14);
    expect_rel(e.r_G_prime, c.rGp, 1e-12);
    expect_rel(eval_g(c.r, p), c.g, 1e-14);
  }
}

TEST(RadialProfile, LogEntryAgreesWithDirect) {
  const ProfileParams p;
  for (double r : {0.5, 1e-3, 1e-100}) {
    const ProfileEval a = eval_profile(r, p);
    const ProfileEval b = eval_profile_log(std::log(r), p);
    expect_rel(b.G, a.G, 1e-14);
    expect_rel(b.r_H_prime, a.r_H_prime, 1e-12);
  }
}

TEST(RadialProfile, LogLogEntryReachesBeyondDoubleLogs) {
  const ProfileParams p;
  const ProfileEval e = eval_profile_loglog(600.0, p);
  EXPECT_DOUBLE_EQ(e.g, 1.0 / 600.0);
  EXPECT_GT(e.G, 0.0);
  EXPECT_LT(e.G, 1.0 / 599.0);
}

TEST(RadialProfile, InverseOfG) {
  const ProfileParams p;
  expect_rel(eval_g_inverse(0.5, p), oracle::g_inv_0p5, 1e-13);
  expect_rel(eval_g_inverse(0.3, p), oracle::g_inv_0p3, 1e-12);
  for (double r : {1e-300, 1e-20, 1e-3, 0.7}) {
    expect_rel(eval_g_inverse(eval_g(r, p), p), r, 1e-12);
  }
}

TEST(RadialProfile, InverseLogOverflowsToMinusInfinity) {
  const ProfileParams p;
  EXPECT_EQ(eval_g_inverse_log(1.0 / 800.0, p), -std::numeric_limits<double>::infinity());
  EXPECT_NEAR(eval_g_inverse_log(0.01, p), std::log(16.0) - std::exp(100.0), 1e-12 * std::exp(100.0));
}

TEST(RadialProfile, GAndGAreIncreasing) {
  const ProfileParams p;
  double prev_g = 0.0;
  double prev_G = 0.0;
  for (int k = 1000; k >= 0; --k) {
    const ProfileEval e = eval_profile(std::ldexp(1.0, -k), p);
    EXPECT_GT(e.g, prev_g);
    EXPECT_GT(e.G, prev_G);
    EXPECT_GT(e.r_g_prime, 0.0);
    EXPECT_GT(e.r_G_prime, 0.0);
    prev_g = e.g;
    prev_G = e.G;
  }
}

TEST(RadialProfile, RejectsBadInputs) {
  const ProfileParams p;
  EXPECT_THROW(eval_profile(0.0, p), DomainError);
  EXPECT_THROW(eval_profile(-1.0, p), DomainError);
  EXPECT_THROW(eval_profile(2.0, p), DomainError);
  EXPECT_THROW(eval_profile(std::nan(""), p), DomainError);
  EXPECT_THROW(ProfileParams(2.0, 1.0), DomainError);  // log log 2 < 0
  EXPECT_THROW(ProfileParams(16.0, 0.0), DomainError);
  EXPECT_THROW(eval_g_inverse(0.0, p), DomainError);
  EXPECT_THROW(eval_g_inverse(1.5, p), DomainError);
}

TEST(RadialProfile, OtherConstantsShiftTheProfile) {
  const ProfileParams p(100.0, 0.5);
  const double r = 1e-6;
  EXPECT_DOUBLE_EQ(eval_g(r, p), 1.0 / std::log(std::log(100.0 / r)));
}
