#pragma once

// Differential of the cusp map f2 and its pointwise distortion.
//
// Matrices are written in orthonormal polar frames: columns follow the source
// directions (e_r, e_theta) at the basepoint, rows the image directions
// (e_rho, e_psi). Operator norm and determinant do not depend on the frame.

#include <span>
#include <vector>

#include "cusp/maps.hpp"
#include "cusp/radial_profile.hpp"

namespace cusp {

struct Jacobian2 {
  double a11 = 0.0;
  double a12 = 0.0;
  double a21 = 0.0;
  double a22 = 0.0;
  PolarPoint base;
};

struct DistortionSample {
  PolarPoint base;
  double op_norm = 0.0;
  double jac_det = 0.0;
  double K = 1.0;
};

/// Closed-form differential of f2 at p (0 < r). For r <= r_max the entries
/// are the cusp-sector formulas; beyond r_max the radial extension's
/// constant-profile matrix is returned.
Jacobian2 jacobian_f2_analytic(const PolarPoint& p, const ProfileParams& params);

/// r times the differential at a point given by its log radius (r <= r_max).
/// Distortion is scale invariant, so K of this matrix is K of f2.
Jacobian2 jacobian_f2_scaled(const LogPolarPoint& p, const ProfileParams& params);

/// Central differences of f2 in the same polar frames, radial step h and
/// angular step h / r. SeamError within 2h of a sector seam, DomainError
/// within 2h of r = 0 or r = r_max.
Jacobian2 jacobian_fd(const PolarPoint& p, const ProfileParams& params, double h);

/// Largest singular value (closed form for 2x2).
double op_norm(const Jacobian2& m);

/// K = |Df|^2 / J when J > 0 and entries are finite, otherwise 1.
DistortionSample distortion_K(const Jacobian2& m);

/// K of f2 at a point given by its log radius.
double distortion_K_log(const LogPolarPoint& p, const ProfileParams& params);

/// Distortion of f2 at an f2-source point; 1 when F2 is disabled in `chain`.
/// Handles r <= 0 as the degenerate case (K = 1).
double chain_distortion_at_f2_source(const LogPolarPoint& p, const MapChain& chain);

struct PolarGrid {
  double r_min = 1e-8;
  double r_max = 1.0;
  int n_r = 64;
  int n_theta = 64;
  bool log_spacing = true;

  std::vector<double> radii() const;
  /// Cell-centred angles in [-pi/2, 3pi/2); never lands on a seam.
  std::vector<double> angles() const;
};

/// Analytic distortion of f2 on the grid, ordered radius-major.
std::vector<DistortionSample> distortion_field(const PolarGrid& grid,
                                               const ProfileParams& params);

/// Distortion of the whole chain at the source points whose f1 image is the
/// grid point (the grid point itself when F1 is disabled).
std::vector<DistortionSample> distortion_field(const PolarGrid& grid, const MapChain& chain);

struct BoundRatioRow {
  double r = 0.0;
  double K = 1.0;
  double bound = 0.0;  // log(c_g / r) * log log(c_g / r)
  double ratio = 0.0;
};

struct BoundRatioReport {
  double theta = 0.0;
  std::vector<BoundRatioRow> rows;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  double band_lo = 0.0;
  double band_hi = 0.0;
  bool pass = false;            // all ratios inside [band_lo, band_hi]
  double limit_estimate = 0.0;  // intercept of ratio vs. L2 / L1, fitted on the smaller half of r
};

BoundRatioReport bound_ratio_fit(std::span<const double> r_values, double theta,
                                 const ProfileParams& params, double band_lo = 0.05,
                                 double band_hi = 2.0);

/// Largest ratio among report rows with r in [r_lo, r_hi].
double max_ratio_in_window(const BoundRatioReport& report, double r_lo, double r_hi);

/// Cartesian differential of the enabled chain stages at x.
struct CartesianJacobian {
  double a11 = 1.0;
  double a12 = 0.0;
  double a21 = 0.0;
  double a22 = 1.0;
};

CartesianJacobian chain_jacobian(const PlanePoint& x, const MapChain& chain);

/// K of the chain at x, from the composed Cartesian differential. The base
/// point is the polar form of f1(x) (of x when F1 is disabled).
DistortionSample distortion_K_chain(const PlanePoint& x, const MapChain& chain);

}  // namespace cusp
