#pragma once

// Discrete condenser problems on structured node grids.
//
// Minimises  sum_edges c_e (u_a - u_b)^2 + sum_nodes lead_n (1 - u_n)^2
// with u = 0 on Zero nodes and u = 1 on One nodes. Edges touching an Outside
// node carry no energy (natural boundary). Conductances are dimensionless, so
// the same solver serves Cartesian grids (c = weight) and conformal
// log-polar grids (c = weight * h_across / h_along).

#include <cstdint>
#include <vector>

namespace cusp {

enum class NodeKind : std::uint8_t { Outside, Free, Zero, One };

struct GridSolverConfig {
  int resolution = 256;  // nodes per unit length
  double tolerance = 1e-10;  // relative residual
  int max_iterations = 50000;

  /// DomainError unless resolution >= 16, tolerance > 0, max_iterations > 0.
  void validate() const;
};

class GridProblem {
 public:
  GridProblem(int nx, int ny);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * nx_ + i; }

  NodeKind& kind(int i, int j) { return kind_[index(i, j)]; }
  NodeKind kind(int i, int j) const { return kind_[index(i, j)]; }
  /// Edge (i, j) -- (i + 1, j).
  double& cx(int i, int j) { return cx_[static_cast<std::size_t>(j) * (nx_ - 1) + i]; }
  double cx(int i, int j) const { return cx_[static_cast<std::size_t>(j) * (nx_ - 1) + i]; }
  /// Edge (i, j) -- (i, j + 1).
  double& cy(int i, int j) { return cy_[index(i, j)]; }
  double cy(int i, int j) const { return cy_[index(i, j)]; }
  /// Conductance from node (i, j) to potential 1.
  double& lead(int i, int j) { return lead_[index(i, j)]; }
  double lead(int i, int j) const { return lead_[index(i, j)]; }

  std::size_t count(NodeKind k) const;

 private:
  int nx_;
  int ny_;
  std::vector<NodeKind> kind_;
  std::vector<double> cx_;
  std::vector<double> cy_;
  std::vector<double> lead_;
};

struct GridSolution {
  std::vector<double> u;  // per node, 0 on Outside nodes
  double energy = 0.0;
  int iterations = 0;
  double residual = 0.0;  // final relative residual
  std::size_t free_nodes = 0;
};

/// Preconditioned conjugate gradients from u = 0. Free nodes that no Zero,
/// One or lead node can reach are pinned to 0 and dropped. MaskError when
/// Zero or One (or lead) nodes are missing or a Zero node touches a One node;
/// ConvergenceError past max_iterations.
GridSolution solve_condenser(const GridProblem& problem, const GridSolverConfig& cfg);

}  // namespace cusp
