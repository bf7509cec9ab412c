#include "cusp/radial_profile.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "cusp/errors.hpp"

namespace cusp {
namespace {

using Real = long double;

// Largest L2 for which L1 = e^{L2} and 1/(L1 L2^2) stay comfortably inside
// the normal double range.
constexpr double kMaxLogLog = 700.0;

ProfileEval from_logs(Real L1, Real L2, Real log_r) {
  const Real g = 1.0L / L2;
  const Real H = L2 / L1;
  const Real s = std::sqrt(1.0L + H * H);
  const Real r_gp = 1.0L / (L1 * L2 * L2);
  const Real r_Hp = (L2 - 1.0L) / (L1 * L1);
  const Real r_Gp = (r_gp * (1.0L + H * H) + g * H * r_Hp) / s;

  ProfileEval e;
  e.log_r = static_cast<double>(log_r);
  e.r = static_cast<double>(std::exp(log_r));
  e.L1 = static_cast<double>(L1);
  e.L2 = static_cast<double>(L2);
  e.g = static_cast<double>(g);
  e.H = static_cast<double>(H);
  e.G = static_cast<double>(g * s);
  e.atan_H = static_cast<double>(std::atan(H));
  e.r_g_prime = static_cast<double>(r_gp);
  e.r_H_prime = static_cast<double>(r_Hp);
  e.r_G_prime = static_cast<double>(r_Gp);
  if (e.r > 0.0) {
    const Real r = std::exp(log_r);
    e.g_prime = static_cast<double>(r_gp / r);
    e.H_prime = static_cast<double>(r_Hp / r);
    e.G_prime = static_cast<double>(r_Gp / r);
  } else {
    e.g_prime = e.H_prime = e.G_prime = std::numeric_limits<double>::infinity();
  }
  return e;
}

void check_radius(double r, const ProfileParams& params) {
  if (!(r > 0.0) || !std::isfinite(r) || r > params.r_max()) {
    throw DomainError("radial profile: radius " + std::to_string(r) +
                      " outside (0, r_max]");
  }
}

}  // namespace

ProfileParams::ProfileParams() : ProfileParams(16.0, 1.0) {}

ProfileParams::ProfileParams(double c_g, double r_max)
    : c_g_(c_g), r_max_(r_max), log_c_g_(std::log(c_g)) {
  if (!(c_g > 0.0) || !(r_max > 0.0) || r_max > 1.0 || !std::isfinite(c_g)) {
    throw DomainError("ProfileParams: need c_g > 0 and r_max in (0, 1]");
  }
  const double L1 = std::log(c_g / r_max);
  if (!(L1 > 0.0) || !(std::log(L1) > 0.0)) {
    throw DomainError("ProfileParams: log(log(c_g / r_max)) must be positive");
  }
  // g and G strictly increasing in r on a dyadic grid down to the subnormals.
  ProfileEval prev = eval_profile_log(std::log(r_max), *this);
  for (int k = 1; k <= 1100; ++k) {
    const ProfileEval cur =
        eval_profile_log(std::log(r_max) - k * std::numbers::ln2, *this);
    if (!(cur.g < prev.g) || !(cur.G < prev.G)) {
      throw DomainError("ProfileParams: profile not monotone for c_g = " +
                        std::to_string(c_g));
    }
    prev = cur;
  }
}

double eval_g(double r, const ProfileParams& params) {
  check_radius(r, params);
  const Real L1 = static_cast<Real>(params.log_c_g()) - std::log(static_cast<Real>(r));
  const Real L2 = std::log(L1);
  if (!(L2 > 0.0L)) throw DomainError("eval_g: log log(c_g / r) <= 0");
  return static_cast<double>(1.0L / L2);
}

ProfileEval eval_profile(double r, const ProfileParams& params) {
  check_radius(r, params);
  const Real log_r = std::log(static_cast<Real>(r));
  const Real L1 = static_cast<Real>(params.log_c_g()) - log_r;
  const Real L2 = std::log(L1);
  if (!(L2 > 0.0L)) throw DomainError("eval_profile: log log(c_g / r) <= 0");
  ProfileEval e = from_logs(L1, L2, log_r);
  e.r = r;
  return e;
}

ProfileEval eval_profile_log(double log_r, const ProfileParams& params) {
  if (!std::isfinite(log_r) || log_r > std::log(params.r_max())) {
    throw DomainError("eval_profile_log: log radius outside (-inf, log r_max]");
  }
  const Real L1 = static_cast<Real>(params.log_c_g()) - static_cast<Real>(log_r);
  const Real L2 = std::log(L1);
  if (!(L2 > 0.0L)) throw DomainError("eval_profile_log: log log(c_g / r) <= 0");
  return from_logs(L1, L2, static_cast<Real>(log_r));
}

ProfileEval eval_profile_loglog(double L2, const ProfileParams& params) {
  const double L2_min = std::log(params.log_c_g() - std::log(params.r_max()));
  if (!std::isfinite(L2) || L2 < L2_min || L2 > kMaxLogLog) {
    throw DomainError("eval_profile_loglog: L2 outside [L2(r_max), 700]");
  }
  const Real L1 = std::exp(static_cast<Real>(L2));
  return from_logs(L1, static_cast<Real>(L2), static_cast<Real>(params.log_c_g()) - L1);
}

namespace {

Real g_inverse_log(double gval, const ProfileParams& params) {
  const double g_max = eval_g(params.r_max(), params);
  if (!(gval > 0.0) || gval > g_max) {
    throw DomainError("eval_g_inverse: value outside (0, g(r_max)]");
  }
  const Real L1 = std::exp(1.0L / static_cast<Real>(gval));
  return static_cast<Real>(params.log_c_g()) - L1;
}

}  // namespace

double eval_g_inverse(double gval, const ProfileParams& params) {
  return static_cast<double>(std::exp(g_inverse_log(gval, params)));
}

double eval_g_inverse_log(double gval, const ProfileParams& params) {
  const Real log_r = g_inverse_log(gval, params);
  if (log_r < -static_cast<Real>(std::numeric_limits<double>::max())) {
    return -std::numeric_limits<double>::infinity();
  }
  return static_cast<double>(log_r);
}

}  // namespace cusp
