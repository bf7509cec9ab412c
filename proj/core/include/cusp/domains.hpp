#pragma once

// Exponential and power cusp domains, boundary arcs near the tip and the
// diameters of their preimages under the map chain.

#include <span>
#include <vector>

#include "cusp/maps.hpp"

namespace cusp {

/// Strip {0 < x1 < 1, |x2| < e^{-1/x1}} joined with the disk B(x0, r0).
struct ExpCuspDomain {
  PlanePoint x0{2.0, 0.0};
  double r0 = 1.0655211322337126;  // sqrt(1 + e^{-2})
};

/// Strip {0 < x1 < 1, |x2| < x1^{1+s}} joined with B((s + 2, 0), r_s),
/// r_s = sqrt((s + 1)^2 + 1).
class PowerCuspDomain {
 public:
  /// DomainError unless s > 0.
  explicit PowerCuspDomain(double s);
  double s() const { return s_; }
  PlanePoint center() const { return {s_ + 2.0, 0.0}; }
  double radius() const;

 private:
  double s_;
};

bool contains_exp(const PlanePoint& p, const ExpCuspDomain& d = {});
bool contains_power(const PlanePoint& p, const PowerCuspDomain& d);

/// Boundary points (x1, +-e^{-1/x1}) with |x| <= t. Upper branch first, then
/// the lower one, each ordered by increasing x1.
struct BoundaryArc {
  double t = 0.0;
  std::vector<PlanePoint> samples;
};

/// Root of x1^2 + e^{-2/x1} = t^2 in (0, t).
double arc_x1_max(double t);

/// n samples per branch on a log grid of x1 from 1e-300 to arc_x1_max(t).
/// Where e^{-1/x1} underflows the sample sits on the axis. DomainError unless
/// 0 < t < 1/2 and n >= 2.
BoundaryArc boundary_arc(double t, int n, const ExpCuspDomain& d = {});

/// Largest pairwise distance over the samples.
double arc_diameter(std::span<const PlanePoint> samples);
double arc_diameter(const BoundaryArc& arc);

/// A length together with its natural log, for lengths below the double range.
struct LogLength {
  double value = 0.0;
  double log_value = 0.0;
};

/// Boundary arc of the chain's image domain within distance t of the tip.
/// The image of the unit circle near the tip is f3 of the curve
/// (s, +-e^{-1/s}), traced here by the cusp abscissa s.
struct ImageArc {
  double t = 0.0;
  double s_max = 0.0;             // cusp abscissa of the arc endpoints
  std::vector<double> s_values;   // per branch, increasing
  std::vector<PlanePoint> samples;  // upper branch, then lower branch
};

/// DomainError unless 0 < t < 1/2, n >= 2 and the chain contains F2.
ImageArc image_boundary_arc(double t, const MapChain& chain, int n);

/// Diameter of the pullback of image_boundary_arc through the chain, together
/// with the tip preimage. Computed from log radii, so it stays meaningful when
/// the preimage radii underflow.
LogLength preimage_arc_diameter(double t, const MapChain& chain, int n);

}  // namespace cusp
