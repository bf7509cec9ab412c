#include <gtest/gtest.h>

#include <cmath>

#include "cusp/errors.hpp"
#include "cusp/grid_solver.hpp"

using namespace cusp;

namespace {

// Strip of n columns with unit conductances, left column One, right column Zero.
GridProblem strip(int nx, int ny, double c = 1.0) {
  GridProblem p(nx, ny);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      p.kind(i, j) = i == 0 ? NodeKind::One : (i == nx - 1 ? NodeKind::Zero : NodeKind::Free);
      if (i + 1 < nx) p.cx(i, j) = c;
      if (j + 1 < ny) p.cy(i, j) = c;
    }
  }
  return p;
}

GridSolverConfig config() {
  GridSolverConfig cfg;
  cfg.resolution = 16;
  cfg.tolerance = 1e-12;
  return cfg;
}

}  // namespace

TEST(GridSolver, ResistorChainEnergy) {
  // ny parallel chains of nx - 1 unit resistors: energy ny / (nx - 1).
  const GridSolution s = solve_condenser(strip(41, 7), config());
  EXPECT_NEAR(s.energy, 7.0 / 40.0, 1e-10);
  EXPECT_NEAR(s.u[strip(41, 7).index(10, 3)], 0.75, 1e-9);
  EXPECT_EQ(s.free_nodes, 39u * 7u);
  EXPECT_LE(s.residual, 1e-12);
}

TEST(GridSolver, LargeStripUsesFewIterations) {
  const GridSolution s = solve_condenser(strip(300, 200), config());
  EXPECT_NEAR(s.energy, 200.0 / 299.0, 1e-9);
  EXPECT_LT(s.iterations, 100);
}

TEST(GridSolver, EnergyScalesWithConductance) {
  const double a = solve_condenser(strip(30, 10, 1.0), config()).energy;
  const double b = solve_condenser(strip(30, 10, 3.5), config()).energy;
  EXPECT_NEAR(b / a, 3.5, 1e-12);
}

TEST(GridSolver, LeadActsAsSeriesResistor) {
  GridProblem p = strip(11, 2);
  for (int j = 0; j < 2; ++j) {
    p.kind(0, j) = NodeKind::Free;
    p.lead(0, j) = 1.0;  // one extra unit resistor to potential 1
  }
  const GridSolution s = solve_condenser(p, config());
  EXPECT_NEAR(s.energy, 2.0 / 11.0, 1e-12);
}

TEST(GridSolver, UnreachableNodesAreDropped) {
  GridProblem p = strip(10, 3);
  p.kind(5, 1) = NodeKind::Outside;
  p.kind(0, 2) = NodeKind::Outside;
  p.kind(9, 2) = NodeKind::Outside;
  for (int i = 0; i < 10; ++i) {
    p.cy(i, 0) = 0.0;
    p.cy(i, 1) = 0.0;
  }
  const GridSolution s = solve_condenser(p, config());
  EXPECT_NEAR(s.energy, 1.0 / 9.0, 1e-10);
  EXPECT_EQ(s.u[p.index(4, 2)], 0.0);
}

TEST(GridSolver, MaskErrors) {
  GridProblem none(5, 5);
  for (int j = 0; j < 5; ++j)
    for (int i = 0; i < 5; ++i) none.kind(i, j) = NodeKind::Free;
  EXPECT_THROW(solve_condenser(none, config()), MaskError);
  GridProblem touching = strip(2, 2);
  EXPECT_THROW(solve_condenser(touching, config()), MaskError);
}

TEST(GridSolver, ConfigValidation) {
  GridSolverConfig c;
  c.resolution = 4;
  EXPECT_THROW(c.validate(), DomainError);
  c = GridSolverConfig{};
  c.tolerance = 0.0;
  EXPECT_THROW(c.validate(), DomainError);
  c = GridSolverConfig{};
  c.max_iterations = 0;
  EXPECT_THROW(c.validate(), DomainError);
}

TEST(GridSolver, IterationLimit) {
  GridSolverConfig c = config();
  c.max_iterations = 1;
  EXPECT_THROW(solve_condenser(strip(200, 100), c), ConvergenceError);
}
