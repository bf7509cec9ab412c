#pragma once

// Condenser capacities: the explicit Lipschitz test function on the
// exponential cusp, weighted grid solves and the closed-form bounds used by
// the non-existence argument.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "cusp/grid_solver.hpp"
#include "cusp/maps.hpp"

namespace cusp {

enum class CapacityMethod { ClosedForm, GridSolve };

std::string to_string(CapacityMethod m);

struct CapacityEstimate {
  double value = 0.0;      // may underflow to 0; log_value stays finite
  double log_value = 0.0;
  CapacityMethod method = CapacityMethod::ClosedForm;
  std::string weight_desc;
  std::string pair_desc;
  int iterations = 0;
  double residual = 0.0;
};

/// u = 1 for x1 <= r, 0 for x1 > d / 2, and in between
/// 1 - int_r^{x1} e^{1/t} dt / int_r^{d/2} e^{1/t} dt.
struct LipTestFn {
  double r = 0.1;
  double d = 1.0;

  /// DomainError unless 0 < r < d / 2 and d <= 1.
  void validate() const;
};

/// log of int_a^b e^{1/t} dt for 0 < a < b <= 1/2, to relative 1e-12.
double log_exp_inv_integral(double a, double b);

/// DomainError if x is not in the exponential cusp domain.
double lip_test_value(const PlanePoint& x, const LipTestFn& fn);

/// (int_r^{d/2} e^{1/t} dt)^{-1}, with its log.
CapacityEstimate lip_test_energy(double r, double d);

/// Dirichlet energy of the test function over the cusp strip, whose width is
/// 2 e^{-1/x1}: exactly twice lip_test_energy.
CapacityEstimate lip_test_exact_energy(double r, double d);

/// Dirichlet energy of the test function sampled on a cusp grid graded in
/// 1/x1 (`resolution` columns across [r, d/2]); each column spans the full
/// strip, where the sampled function has no x2 gradient.
CapacityEstimate lip_test_discrete_energy(double r, double d, int resolution);

struct DecaySeries {
  double s = 0.0;
  std::vector<double> r_values;
  std::vector<double> log_ratios;  // log(energy(r) / r^s)
  bool pass = false;
};

struct DecayReport {
  std::vector<DecaySeries> series;
  bool pass = false;
};

/// For each s, the ratios energy(r) / r^s along r_list. A series passes when
/// it decreases strictly over at least its second half and its last ratio is
/// below 1e-3 times its largest one. DomainError unless r_list is strictly
/// decreasing inside (0, 1/4) with at least 4 entries.
DecayReport superpoly_decay_check(std::span<const double> s_list,
                                  std::span<const double> r_list, double d = 1.0);
/// Same check for an arbitrary energy given by its log.
DecayReport superpoly_decay_check(std::span<const double> s_list,
                                  std::span<const double> r_list,
                                  const std::function<double(double)>& log_energy);

struct GridBox {
  double x_lo = -1.0;
  double x_hi = 1.0;
  double y_lo = -1.0;
  double y_hi = 1.0;
};

using PlanePredicate = std::function<bool(const PlanePoint&)>;
using PlaneWeight = std::function<double(const PlanePoint&)>;

/// Weighted 2-capacity of (F, E) relative to the domain on a uniform grid of
/// spacing 1 / resolution over `box` (cell-centred nodes). Weights are taken
/// at edge midpoints. Edges from a free node into F or E are cut where the
/// set begins, located by bisection on the predicate. MaskError when F or E
/// has no node in the domain, a node lies in both, or the sets touch.
CapacityEstimate grid_capacity(const PlaneWeight& weight, const PlanePredicate& f_mask,
                               const PlanePredicate& e_mask, const PlanePredicate& domain_mask,
                               const GridBox& box, const GridSolverConfig& cfg);

/// Capacity of the annulus condenser r_in < |x| < r_out, unweighted.
CapacityEstimate annulus_capacity(double r_in, double r_out, const GridSolverConfig& cfg,
                                  double weight = 1.0);

/// C lambda (log(sqrt(4L/pi) / diam_e))^{-2}; DomainError unless the log
/// argument exceeds 1 and lambda, L, diam_e > 0.
double capala_lower_bound(double lambda, double L, double diam_e, double C = 1.0);
/// Same bound with L and diam_e given by their logs.
double capala_lower_bound_log(double lambda, double log_L, double log_diam_e, double C = 1.0);

struct LogValue {
  double value = 0.0;
  double log_value = 0.0;
};

/// C exp(-C_tilde / diam^{(1 + eps) / lambda}).
LogValue diamarvio_bound(double diam_e_prime, double lambda, double eps, double C = 1.0,
                         double C_tilde = 1.0);

}  // namespace cusp
