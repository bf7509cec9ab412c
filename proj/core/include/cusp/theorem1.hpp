#pragma once

// Weighted condenser experiment for the map chain: F = closed disk of radius
// 1/4, E_t = preimage of the image-boundary arc within distance t of the cusp
// tip, weight 1/K on the unit disk.
//
// The solve runs on a conformal log-polar grid around the tip preimage
// x* = -1, x = -1 + e^{-rho} e^{i phi}, rho in [-log 2, rho_far]. E_t sits at
// rho ~ e^{1/t}, far beyond any grid; past rho_far each angular row is
// closed by a one-dimensional tube whose series resistance is
// int K d rho / h_phi up to the depth of E_t.

#include <string>
#include <vector>

#include "cusp/capacity.hpp"
#include "cusp/maps.hpp"

namespace cusp {

enum class WeightKind { InverseK, Unit };

std::string to_string(WeightKind w);

struct Theorem1Config {
  GridSolverConfig solver{};
  double rho_far = 6.0;
  WeightKind weight = WeightKind::InverseK;
  int arc_samples = 64;
  double lambda = 1.0;  // exponent of the integrability bound exp(lambda K)
  double eps = 1.0;
  double C = 1.0;
  double C_tilde = 1.0;
};

struct Theorem1Row {
  double t = 0.0;
  double diam_image_arc = 0.0;      // E'_t on the image domain boundary
  double diam_model_arc = 0.0;      // E'_t on the exact exponential cusp
  double log_diam_preimage = 0.0;   // log diam E_t
  double rho_t = 0.0;               // depth of E_t in the log-polar coordinate
  double capacity = 0.0;
  double log_capacity = 0.0;
  double cap_over_t = 0.0;
  double cap_over_t2 = 0.0;
  double log_lip_energy = 0.0;      // lip_test_energy(t, 1), log
  double capala_bound = 0.0;
  double log_diamarvio_bound = 0.0;
  int iterations = 0;
  std::size_t free_nodes = 0;
};

struct Theorem1Report {
  Theorem1Config config;
  double log_L = 0.0;  // log of the integral of exp(lambda K) over the unit disk
  std::vector<Theorem1Row> rows;
  bool capacity_monotone = false;  // nonincreasing along the (decreasing) t list
  bool ratio_t_decay = false;      // cap / t strictly decreasing, last below 1e-3 of first
  bool ratio_t2_decay = false;
};

/// log of the integral of exp(lambda K_f) over the unit disk for the full
/// chain (f1 carries the disk onto the right half plane).
double log_disk_exp_integral(double lambda, const MapChain& chain);

/// DomainError unless t_list is strictly decreasing in (0, 1/2) and the chain
/// has all three stages.
Theorem1Report theorem1_experiment(const std::vector<double>& t_list, const MapChain& chain,
                                   const Theorem1Config& cfg);

}  // namespace cusp
