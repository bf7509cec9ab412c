#include "cusp/grid_solver.hpp"

#include <cmath>
#include <deque>

#include "cusp/errors.hpp"

namespace cusp {

void GridSolverConfig::validate() const {
  if (resolution < 16) throw DomainError("GridSolverConfig: resolution must be >= 16");
  if (!(tolerance > 0.0)) throw DomainError("GridSolverConfig: tolerance must be > 0");
  if (max_iterations <= 0) throw DomainError("GridSolverConfig: max_iterations must be > 0");
}

GridProblem::GridProblem(int nx, int ny) : nx_(nx), ny_(ny) {
  if (nx < 2 || ny < 2) throw DomainError("GridProblem: need at least 2x2 nodes");
  const std::size_t n = static_cast<std::size_t>(nx) * ny;
  kind_.assign(n, NodeKind::Outside);
  cx_.assign(static_cast<std::size_t>(nx - 1) * ny, 0.0);
  cy_.assign(static_cast<std::size_t>(nx) * (ny - 1), 0.0);
  lead_.assign(n, 0.0);
}

std::size_t GridProblem::count(NodeKind k) const {
  std::size_t c = 0;
  for (NodeKind v : kind_) c += v == k;
  return c;
}

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double fixed_value(NodeKind k) { return k == NodeKind::One ? 1.0 : 0.0; }

bool is_fixed(NodeKind k) { return k == NodeKind::Zero || k == NodeKind::One; }

// Aggregation multigrid on the free-node operator: 2x2 blocks of nodes are
// merged, so the Galerkin coarse operator is again a 5-point stencil.
class Multigrid {
 public:
  Multigrid(int nx, int ny, std::vector<char> free, std::vector<double> diag,
            std::vector<double> ce, std::vector<double> cn) {
    levels_.push_back({nx, ny, std::move(free), std::move(diag), std::move(ce), std::move(cn), {}, {}, {}});
    while (true) {
      const Level& f = levels_.back();
      std::size_t count = 0;
      for (char c : f.free) count += c;
      if (count <= kCoarseSize || (f.nx <= 2 && f.ny <= 2)) break;
      levels_.push_back(coarsen(f));
    }
    for (Level& l : levels_) {
      l.x.assign(l.free.size(), 0.0);
      l.b.assign(l.free.size(), 0.0);
      l.r.assign(l.free.size(), 0.0);
    }
    factor_coarsest();
  }

  void apply(const std::vector<double>& r, std::vector<double>& z) {
    Level& top = levels_.front();
    top.b = r;
    std::fill(top.x.begin(), top.x.end(), 0.0);
    cycle(0);
    z = top.x;
  }

 private:
  static constexpr std::size_t kCoarseSize = 800;

  struct Level {
    int nx;
    int ny;
    std::vector<char> free;
    std::vector<double> diag, ce, cn;
    std::vector<double> x, b, r;
  };

  static Level coarsen(const Level& f) {
    Level c;
    c.nx = (f.nx + 1) / 2;
    c.ny = (f.ny + 1) / 2;
    const std::size_t n = static_cast<std::size_t>(c.nx) * c.ny;
    c.free.assign(n, 0);
    c.diag.assign(n, 0.0);
    c.ce.assign(n, 0.0);
    c.cn.assign(n, 0.0);
    for (int j = 0; j < f.ny; ++j) {
      for (int i = 0; i < f.nx; ++i) {
        const std::size_t k = static_cast<std::size_t>(j) * f.nx + i;
        if (!f.free[k]) continue;
        const std::size_t K = static_cast<std::size_t>(j / 2) * c.nx + i / 2;
        c.free[K] = 1;
        c.diag[K] += f.diag[k];
        if (f.ce[k] != 0.0) {
          if ((i + 1) / 2 == i / 2) {
            c.diag[K] -= 2 * f.ce[k];
          } else {
            c.ce[K] += f.ce[k];
          }
        }
        if (f.cn[k] != 0.0) {
          if ((j + 1) / 2 == j / 2) {
            c.diag[K] -= 2 * f.cn[k];
          } else {
            c.cn[K] += f.cn[k];
          }
        }
      }
    }
    for (std::size_t K = 0; K < n; ++K) {
      if (!c.free[K]) c.diag[K] = 1.0;
    }
    return c;
  }

  static double neighbour_sum(const Level& l, const std::vector<double>& x, std::size_t k) {
    const std::size_t row = static_cast<std::size_t>(l.nx);
    double s = 0.0;
    if (l.ce[k] != 0.0) s += l.ce[k] * x[k + 1];
    if (k % row != 0 && l.ce[k - 1] != 0.0) s += l.ce[k - 1] * x[k - 1];
    if (l.cn[k] != 0.0) s += l.cn[k] * x[k + row];
    if (k >= row && l.cn[k - row] != 0.0) s += l.cn[k - row] * x[k - row];
    return s;
  }

  static void gauss_seidel(Level& l, bool forward) {
    const std::size_t n = l.free.size();
    for (std::size_t m = 0; m < n; ++m) {
      const std::size_t k = forward ? m : n - 1 - m;
      if (!l.free[k]) continue;
      l.x[k] = (l.b[k] + neighbour_sum(l, l.x, k)) / l.diag[k];
    }
  }

  void cycle(std::size_t depth) {
    Level& l = levels_[depth];
    if (depth + 1 == levels_.size()) {
      solve_coarsest();
      return;
    }
    gauss_seidel(l, true);
    for (std::size_t k = 0; k < l.free.size(); ++k) {
      l.r[k] = l.free[k] ? l.b[k] - (l.diag[k] * l.x[k] - neighbour_sum(l, l.x, k)) : 0.0;
    }
    Level& c = levels_[depth + 1];
    std::fill(c.b.begin(), c.b.end(), 0.0);
    std::fill(c.x.begin(), c.x.end(), 0.0);
    for (int j = 0; j < l.ny; ++j) {
      for (int i = 0; i < l.nx; ++i) {
        const std::size_t k = static_cast<std::size_t>(j) * l.nx + i;
        if (l.free[k]) c.b[static_cast<std::size_t>(j / 2) * c.nx + i / 2] += l.r[k];
      }
    }
    cycle(depth + 1);
    if (depth + 2 < levels_.size()) {
      // Second visit (W-cycle): continue from the current coarse iterate.
      for (std::size_t k = 0; k < c.free.size(); ++k) {
        c.r[k] = c.free[k] ? c.b[k] - (c.diag[k] * c.x[k] - neighbour_sum(c, c.x, k)) : 0.0;
      }
      std::vector<double> saved_b = c.b;
      std::vector<double> saved_x = c.x;
      c.b = c.r;
      std::fill(c.x.begin(), c.x.end(), 0.0);
      cycle(depth + 1);
      for (std::size_t k = 0; k < c.x.size(); ++k) c.x[k] += saved_x[k];
      c.b = std::move(saved_b);
    }
    for (int j = 0; j < l.ny; ++j) {
      for (int i = 0; i < l.nx; ++i) {
        const std::size_t k = static_cast<std::size_t>(j) * l.nx + i;
        if (l.free[k]) l.x[k] += c.x[static_cast<std::size_t>(j / 2) * c.nx + i / 2];
      }
    }
    gauss_seidel(l, false);
  }

  void factor_coarsest() {
    const Level& l = levels_.back();
    coarse_index_.assign(l.free.size(), -1);
    coarse_nodes_.clear();
    for (std::size_t k = 0; k < l.free.size(); ++k) {
      if (l.free[k]) {
        coarse_index_[k] = static_cast<long>(coarse_nodes_.size());
        coarse_nodes_.push_back(k);
      }
    }
    const std::size_t m = coarse_nodes_.size();
    const std::size_t row = static_cast<std::size_t>(l.nx);
    chol_.assign(m * m, 0.0);
    for (std::size_t a = 0; a < m; ++a) {
      const std::size_t k = coarse_nodes_[a];
      chol_[a * m + a] = l.diag[k];
      auto link = [&](std::size_t other, double c) {
        if (c == 0.0 || coarse_index_[other] < 0) return;
        const std::size_t b = static_cast<std::size_t>(coarse_index_[other]);
        chol_[a * m + b] -= c;
      };
      if (l.ce[k] != 0.0) link(k + 1, l.ce[k]);
      if (k % row != 0) link(k - 1, l.ce[k - 1]);
      if (l.cn[k] != 0.0) link(k + row, l.cn[k]);
      if (k >= row) link(k - row, l.cn[k - row]);
    }
    for (std::size_t j = 0; j < m; ++j) {
      double d = chol_[j * m + j];
      for (std::size_t p = 0; p < j; ++p) d -= chol_[j * m + p] * chol_[j * m + p];
      if (!(d > 0.0)) throw ConvergenceError("solve_condenser: coarse operator not positive");
      d = std::sqrt(d);
      chol_[j * m + j] = d;
      for (std::size_t i = j + 1; i < m; ++i) {
        double s = chol_[i * m + j];
        for (std::size_t p = 0; p < j; ++p) s -= chol_[i * m + p] * chol_[j * m + p];
        chol_[i * m + j] = s / d;
      }
    }
  }

  void solve_coarsest() {
    Level& l = levels_.back();
    const std::size_t m = coarse_nodes_.size();
    std::vector<double> y(m);
    for (std::size_t i = 0; i < m; ++i) {
      double s = l.b[coarse_nodes_[i]];
      for (std::size_t p = 0; p < i; ++p) s -= chol_[i * m + p] * y[p];
      y[i] = s / chol_[i * m + i];
    }
    for (std::size_t ii = m; ii-- > 0;) {
      double s = y[ii];
      for (std::size_t p = ii + 1; p < m; ++p) s -= chol_[p * m + ii] * y[p];
      y[ii] = s / chol_[ii * m + ii];
    }
    std::fill(l.x.begin(), l.x.end(), 0.0);
    for (std::size_t i = 0; i < m; ++i) l.x[coarse_nodes_[i]] = y[i];
  }

  std::vector<Level> levels_;
  std::vector<long> coarse_index_;
  std::vector<std::size_t> coarse_nodes_;
  std::vector<double> chol_;
};

}  // namespace

GridSolution solve_condenser(const GridProblem& p, const GridSolverConfig& cfg) {
  if (cfg.tolerance <= 0.0 || cfg.max_iterations <= 0) {
    throw DomainError("solve_condenser: invalid solver configuration");
  }
  const int nx = p.nx();
  const int ny = p.ny();
  const std::size_t n = static_cast<std::size_t>(nx) * ny;

  bool any_lead = false;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const double l = p.lead(i, j);
      if (!(l >= 0.0) || !std::isfinite(l)) throw MaskError("solve_condenser: invalid lead");
      if (l > 0.0 && p.kind(i, j) != NodeKind::Outside) any_lead = true;
    }
  }
  if (p.count(NodeKind::Zero) == 0) throw MaskError("solve_condenser: empty zero set");
  if (p.count(NodeKind::One) == 0 && !any_lead) {
    throw MaskError("solve_condenser: empty one set");
  }

  // Edge conductance between two nodes that both take part.
  auto east = [&](int i, int j) {
    if (i + 1 >= nx) return 0.0;
    if (p.kind(i, j) == NodeKind::Outside || p.kind(i + 1, j) == NodeKind::Outside) return 0.0;
    return p.cx(i, j);
  };
  auto north = [&](int i, int j) {
    if (j + 1 >= ny) return 0.0;
    if (p.kind(i, j) == NodeKind::Outside || p.kind(i, j + 1) == NodeKind::Outside) return 0.0;
    return p.cy(i, j);
  };

  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const double ce = east(i, j);
      const double cn = north(i, j);
      if (!(ce >= 0.0) || !std::isfinite(ce) || !(cn >= 0.0) || !std::isfinite(cn)) {
        throw MaskError("solve_condenser: conductances must be finite and nonnegative");
      }
      const NodeKind k = p.kind(i, j);
      if ((ce > 0.0 && is_fixed(k) && is_fixed(p.kind(i + 1, j)) && k != p.kind(i + 1, j)) ||
          (cn > 0.0 && is_fixed(k) && is_fixed(p.kind(i, j + 1)) && k != p.kind(i, j + 1))) {
        throw MaskError("solve_condenser: zero and one sets touch");
      }
    }
  }

  // Free nodes connected to a fixed node or a lead.
  std::vector<char> active(n, 0);
  std::deque<std::size_t> queue;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const NodeKind k = p.kind(i, j);
      if (is_fixed(k) || (k == NodeKind::Free && p.lead(i, j) > 0.0)) {
        active[p.index(i, j)] = 1;
        queue.push_back(p.index(i, j));
      }
    }
  }
  while (!queue.empty()) {
    const std::size_t id = queue.front();
    queue.pop_front();
    const int i = static_cast<int>(id % nx);
    const int j = static_cast<int>(id / nx);
    auto visit = [&](int a, int b, double c) {
      if (c <= 0.0) return;
      const std::size_t k = p.index(a, b);
      if (active[k] || p.kind(a, b) != NodeKind::Free) return;
      active[k] = 1;
      queue.push_back(k);
    };
    if (i + 1 < nx) visit(i + 1, j, east(i, j));
    if (i > 0) visit(i - 1, j, east(i - 1, j));
    if (j + 1 < ny) visit(i, j + 1, north(i, j));
    if (j > 0) visit(i, j - 1, north(i, j - 1));
  }

  std::vector<char> free(n, 0);
  std::size_t free_count = 0;
  for (std::size_t k = 0; k < n; ++k) {
    free[k] = active[k] && p.kind(static_cast<int>(k % nx), static_cast<int>(k / nx)) ==
                               NodeKind::Free;
    free_count += free[k];
  }

  // Free-free couplings, diagonal and right-hand side.
  std::vector<double> ce(n, 0.0), cn(n, 0.0), diag(n, 1.0), rhs(n, 0.0);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const std::size_t k = p.index(i, j);
      if (!free[k]) continue;
      double d = p.lead(i, j);
      double b = p.lead(i, j);
      auto couple = [&](int a, int c, double cond, double* slot) {
        if (cond <= 0.0) return;
        d += cond;
        const std::size_t m = p.index(a, c);
        if (free[m]) {
          if (slot) *slot = cond;
        } else {
          b += cond * fixed_value(p.kind(a, c));
        }
      };
      if (i + 1 < nx) couple(i + 1, j, east(i, j), &ce[k]);
      if (i > 0) couple(i - 1, j, east(i - 1, j), nullptr);
      if (j + 1 < ny) couple(i, j + 1, north(i, j), &cn[k]);
      if (j > 0) couple(i, j - 1, north(i, j - 1), nullptr);
      diag[k] = d > 0.0 ? d : 1.0;
      rhs[k] = b;
    }
  }

  const std::size_t row = static_cast<std::size_t>(nx);
  auto apply = [&](const std::vector<double>& x, std::vector<double>& y) {
    for (std::size_t k = 0; k < n; ++k) {
      if (!free[k]) {
        y[k] = 0.0;
        continue;
      }
      double v = diag[k] * x[k];
      v -= ce[k] * (ce[k] != 0.0 ? x[k + 1] : 0.0);
      if (k % row != 0) v -= ce[k - 1] * x[k - 1];
      v -= cn[k] * (cn[k] != 0.0 ? x[k + row] : 0.0);
      if (k >= row) v -= cn[k - row] * x[k - row];
      y[k] = v;
    }
  };

  GridSolution sol;
  sol.free_nodes = free_count;
  Multigrid mg(nx, ny, free, diag, ce, cn);
  std::vector<double> x(n, 0.0), r = rhs, z(n, 0.0), dir(n, 0.0), q(n, 0.0);
  mg.apply(r, z);
  dir = z;
  const double bnorm = std::sqrt(dot(rhs, rhs));
  double rz = dot(r, z);
  double rel = bnorm > 0.0 ? 1.0 : 0.0;
  int it = 0;
  while (rel > cfg.tolerance) {
    if (it >= cfg.max_iterations) {
      throw ConvergenceError("solve_condenser: no convergence within max_iterations");
    }
    apply(dir, q);
    const double alpha = rz / dot(dir, q);
    for (std::size_t k = 0; k < n; ++k) {
      x[k] += alpha * dir[k];
      r[k] -= alpha * q[k];
    }
    ++it;
    rel = std::sqrt(dot(r, r)) / bnorm;
    if (rel <= cfg.tolerance) break;
    mg.apply(r, z);
    const double rz_new = dot(r, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t k = 0; k < n; ++k) dir[k] = z[k] + beta * dir[k];
  }

  sol.u.assign(n, 0.0);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const std::size_t k = p.index(i, j);
      if (free[k]) {
        sol.u[k] = x[k];
      } else if (p.kind(i, j) == NodeKind::One) {
        sol.u[k] = 1.0;
      }
    }
  }
  double energy = 0.0;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const std::size_t k = p.index(i, j);
      if (p.kind(i, j) == NodeKind::Outside) continue;
      if (i + 1 < nx) {
        const double d = sol.u[k] - sol.u[k + 1];
        energy += east(i, j) * d * d;
      }
      if (j + 1 < ny) {
        const double d = sol.u[k] - sol.u[k + row];
        energy += north(i, j) * d * d;
      }
      const double l = p.lead(i, j);
      if (l > 0.0) energy += l * (1.0 - sol.u[k]) * (1.0 - sol.u[k]);
    }
  }
  sol.energy = energy;
  sol.iterations = it;
  sol.residual = rel;
  return sol;
}

}  // namespace cusp
