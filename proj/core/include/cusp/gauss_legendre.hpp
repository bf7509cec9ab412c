#pragma once

#include <vector>

namespace cusp {

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point rule, n >= 1. Nodes by Newton iteration on P_n; cached per n.
const GaussRule& gauss_legendre(int n);

}  // namespace cusp
