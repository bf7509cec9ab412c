#pragma once

// The homeomorphism f = f3 o f2 o f1 of the plane onto the cusp domain.
//
//   f1(z) = (z + 1) / (1 - z)      unit disk -> right half plane, -1 -> 0
//   f2                             sector-wise polar cusp map, radial
//                                  extension outside the closed unit disk
//   f3(z) = z / (z + 1)            right half plane -> B((1/2, 0), 1/2)
//
// The bi-Lipschitz correction onto the exact model domain is taken to be the
// identity, so the image of the unit disk is f3(f2(f1(B))).

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "cusp/radial_profile.hpp"

namespace cusp {

struct PlanePoint {
  double x1 = 0.0;
  double x2 = 0.0;
  bool at_infinity = false;

  static PlanePoint infinity() { return {0.0, 0.0, true}; }
  static PlanePoint from_complex(std::complex<double> z) { return {z.real(), z.imag(), false}; }
  std::complex<double> z() const { return {x1, x2}; }
  double norm() const;
};

enum class Sector { Inner, Outer };

/// Polar point with theta normalised to [-pi/2, 3pi/2). Inner iff theta lies
/// in the open interval (-pi/2, pi/2); the ray theta = -pi/2 is the 3pi/2 end
/// of the Outer interval.
struct PolarPoint {
  double r = 0.0;
  double theta = 0.0;
  Sector sector = Sector::Inner;

  static PolarPoint make(double r, double theta);
};

PolarPoint to_polar(const PlanePoint& p);

/// Source point of f2 given by its log radius (for radii below the double range).
struct LogPolarPoint {
  double log_r = 0.0;
  double theta = 0.0;
};

/// Point of the chain's source plane written as x* + rho e^{i phi}, where x* is
/// the preimage of the cusp tip (-1 with f1 enabled, 0 otherwise).
struct SourceOffset {
  double log_rho = 0.0;
  double phi = 0.0;
};

enum class Stage { F1, F2, F3 };

class MapChain {
 public:
  /// All three stages.
  explicit MapChain(ProfileParams params = {});
  /// Throws DomainError if `stages` is empty or not in F1, F2, F3 order.
  MapChain(ProfileParams params, std::vector<Stage> stages);

  /// Parses "f1,f2,f3" style lists (case-insensitive).
  static MapChain parse(const std::string& stages, ProfileParams params = {});

  const ProfileParams& params() const { return params_; }
  const std::vector<Stage>& stages() const { return stages_; }
  bool has(Stage s) const;
  std::string describe() const;

 private:
  ProfileParams params_;
  std::vector<Stage> stages_;
};

PlanePoint mobius_f1(const PlanePoint& z);
PlanePoint mobius_f1_inv(const PlanePoint& w);
PlanePoint mobius_f3(const PlanePoint& z);
PlanePoint mobius_f3_inv(const PlanePoint& w);

/// Polar angle of the image of (r, theta) for the sector of theta.
double cusp_image_angle(double theta, Sector sector, double atan_H);

PlanePoint cusp_map_f2(const PolarPoint& p, const ProfileParams& params);
PlanePoint cusp_map_f2(const PlanePoint& x, const ProfileParams& params);

/// Inverse of f2. Radius by bisection on the increasing G over (0, r_max] and
/// linear inversion outside. Throws RangeError when |w| is below G at the
/// smallest positive double or above G(r_max) * radial_limit, and
/// ConvergenceError if the bisection needs more than 200 steps.
PolarPoint cusp_map_f2_inv(const PlanePoint& w, const ProfileParams& params,
                           double radial_limit = 1e8);

/// Inverse of f2 restricted to 0 < |w| < G(r_max), returning the log radius.
/// Bisection runs on L2 = log log(c_g / r), so preimages far below the double
/// range are reachable.
LogPolarPoint cusp_map_f2_inv_log(const PlanePoint& w, const ProfileParams& params);

/// Source offset of the f2-source point `p` after undoing f1 (if enabled).
SourceOffset source_offset(const LogPolarPoint& p, const MapChain& chain);
PlanePoint source_point(const SourceOffset& o, const MapChain& chain);

PlanePoint apply_chain(const PlanePoint& x, const MapChain& chain);
PlanePoint apply_chain_inv(const PlanePoint& y, const MapChain& chain);

struct BoundaryTracePoint {
  double t = 0.0;
  PlanePoint cusp_point;  // (t, e^{-1/t})
  PlanePoint image;       // f3 of the cusp point
  double residual = 0.0;  // Re f3(t + i e^{-1/t}) - t
};

std::vector<BoundaryTracePoint> boundary_image_trace(std::span<const double> t_values);

struct QuadraticFit {
  double C = 0.0;
  int points = 0;
};

/// Fit of |residual| = C t^2 over trace points with t in [t_lo, t_hi].
QuadraticFit fit_boundary_residual(std::span<const BoundaryTracePoint> trace, double t_lo,
                                   double t_hi);

}  // namespace cusp
