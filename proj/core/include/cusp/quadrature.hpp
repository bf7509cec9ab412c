#pragma once

// Annular quadrature of distortion functionals over the punctured unit disk
// of the f2 source plane, refined toward the singular point r = 0.
//
// Annuli are integrated in v = -log r, where r dr = e^{-2v} dv, and summed in
// log space: exp(lambda K) reaches e^{300} and beyond near r = 2^{-64}.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "cusp/maps.hpp"

namespace cusp {

struct AnnularScheme {
  std::vector<double> log_eps;  // strictly decreasing log inner radii, all < 0
  int annuli_per_octave = 2;
  int radial_nodes = 8;
  int angular_nodes = 16;  // per sector

  /// eps = 2^{-k} for k = k_first..k_last.
  static AnnularScheme dyadic(int k_first = 1, int k_last = 64, int annuli_per_octave = 2,
                              int radial_nodes = 8, int angular_nodes = 16);

  std::vector<double> eps_list() const;
  /// Throws DomainError on a malformed scheme.
  void validate() const;
  /// Same eps list, twice the annuli and nodes.
  AnnularScheme refined() const;
};

/// Integral of field(r, theta) r dr dtheta over r_in < r < r_out, tensor
/// Gauss-Legendre with the angular range split at the sector seams.
double integrate_annulus(const std::function<double(double, double)>& field, double r_in,
                         double r_out, int radial_nodes = 16, int angular_nodes = 32);

/// log of the integral of exp(log_field) over the annulus with
/// -log r in [v_lo, v_hi]. NodeError if log_field returns NaN or +inf.
double log_integrate_annulus(const std::function<double(const LogPolarPoint&)>& log_field,
                             double v_lo, double v_hi, int radial_nodes, int angular_nodes);

enum class Verdict { Convergent, Divergent, Inconclusive };

std::string to_string(Verdict v);

struct PartialIntegral {
  double log_eps = 0.0;
  double eps = 0.0;            // 0 when below the double range
  double value = 0.0;          // inf when above the double range
  double log_value = 0.0;
  double log_increment = 0.0;  // log of I(eps_k) - I(eps_{k-1})
};

struct IntegrabilityReport {
  std::string integrand;
  std::vector<PartialIntegral> partials;
  std::vector<double> log_increment_ratios;  // log(inc_k / inc_{k-1}), k >= 1
  Verdict verdict = Verdict::Inconclusive;
};

/// Convergent if each of the last three increments shrinks by a factor
/// <= 0.9, Divergent if each grows by >= 1.1, otherwise Inconclusive.
/// Increments are I_0 and I_k - I_{k-1}. InsufficientDataError below 6 partials.
Verdict classify(std::span<const double> partials);
Verdict classify_log_increments(std::span<const double> log_increments);

/// Partial integrals of exp(log_field) over eps_k < |w| < 1.
IntegrabilityReport integrate_log_field(
    const std::function<double(const LogPolarPoint&)>& log_field, const AnnularScheme& scheme,
    std::string integrand);

/// Partial integrals of K^p over the punctured unit disk of the f2 source plane.
IntegrabilityReport integral_K_pow(double p, const AnnularScheme& scheme, const MapChain& chain);

/// Partial integrals of exp(lambda K), accumulated in log space.
IntegrabilityReport integral_exp_K(double lambda, const AnnularScheme& scheme,
                                   const MapChain& chain);

}  // namespace cusp
