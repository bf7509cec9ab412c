#pragma once

// Radial profile of the exponential cusp map.
//
// With L1 = log(c_g / r) and L2 = log(L1) the profile is
//   g(r) = 1 / L2,   H(r) = e^{-1/g} / g = L2 / L1,   G(r) = g * sqrt(1 + H^2).
// Everything is evaluated from (L1, L2) so that radii far below the double
// range can be handled through their logarithm.

namespace cusp {

class ProfileParams {
 public:
  /// Defaults: c_g = 16, r_max = 1.
  ProfileParams();
  /// Throws DomainError unless log(log(c_g / r_max)) > 0 and the monotonicity
  /// check on a dyadic grid passes.
  ProfileParams(double c_g, double r_max);

  double c_g() const { return c_g_; }
  double r_max() const { return r_max_; }
  double log_c_g() const { return log_c_g_; }

 private:
  double c_g_;
  double r_max_;
  double log_c_g_;
};

/// Profile values at one radius. The `*_prime` fields are d/dr; the `r_*`
/// fields hold r times the derivative, which stays finite when r underflows.
struct ProfileEval {
  double r = 0.0;  // 0 when the radius is below the double range
  double log_r = 0.0;
  double L1 = 0.0;
  double L2 = 0.0;
  double g = 0.0;
  double g_prime = 0.0;
  double H = 0.0;
  double H_prime = 0.0;
  double G = 0.0;
  double G_prime = 0.0;
  double atan_H = 0.0;
  double r_g_prime = 0.0;
  double r_H_prime = 0.0;
  double r_G_prime = 0.0;
};

double eval_g(double r, const ProfileParams& params);

ProfileEval eval_profile(double r, const ProfileParams& params);

/// Profile at radius exp(log_r). Accepts any finite log_r <= log(r_max).
ProfileEval eval_profile_log(double log_r, const ProfileParams& params);

/// Profile parametrised directly by L2 = log log(c_g / r) >= L2(r_max).
/// Used when even log r overflows (L2 > ~709).
ProfileEval eval_profile_loglog(double L2, const ProfileParams& params);

/// r = c_g * exp(-exp(1 / gval)); DomainError unless 0 < gval <= g(r_max).
double eval_g_inverse(double gval, const ProfileParams& params);

/// log of eval_g_inverse; -inf once exp(1/gval) overflows.
double eval_g_inverse_log(double gval, const ProfileParams& params);

}  // namespace cusp
