#include "cusp/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "cusp/domains.hpp"
#include "cusp/errors.hpp"
#include "cusp/gauss_legendre.hpp"

namespace cusp {
namespace {

constexpr double kLn2 = std::numbers::ln2;

double log_add(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(std::min(a, b) - m));
}

CapacityEstimate closed_form(double log_value, std::string weight, std::string pair) {
  CapacityEstimate est;
  est.log_value = log_value;
  est.value = std::exp(log_value);
  est.method = CapacityMethod::ClosedForm;
  est.weight_desc = std::move(weight);
  est.pair_desc = std::move(pair);
  return est;
}

std::string lip_pair(double r, double d) {
  return "F={x1<=" + std::to_string(r) + "}, E={x1>" + std::to_string(d / 2) + "}";
}

// Smallest fraction along a -> b where `inside` becomes true; inside(b) holds.
double crossing_fraction(const PlanePoint& a, const PlanePoint& b, const PlanePredicate& inside) {
  double lo = 0.0;
  double hi = 1.0;
  for (int k = 0; k < 40; ++k) {
    const double mid = 0.5 * (lo + hi);
    const PlanePoint m{a.x1 + mid * (b.x1 - a.x1), a.x2 + mid * (b.x2 - a.x2)};
    if (inside(m)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

constexpr double kMinCutFraction = 1e-2;

}  // namespace

std::string to_string(CapacityMethod m) {
  return m == CapacityMethod::ClosedForm ? "ClosedForm" : "GridSolve";
}

void LipTestFn::validate() const {
  if (!(d > 0.0 && d <= 1.0)) throw DomainError("LipTestFn: need 0 < d <= 1");
  if (!(r > 0.0 && r < d / 2)) throw DomainError("LipTestFn: need 0 < r < d/2");
}

double log_exp_inv_integral(double a, double b) {
  if (!(a > 0.0 && b > a && b <= 0.5)) {
    throw DomainError("log_exp_inv_integral: need 0 < a < b <= 1/2");
  }
  // t = 1 / (1/a - u): the integrand becomes e^{1/a} e^{-u} / (1/a - u)^2,
  // decreasing in u because 1/a - u >= 2.
  const double ya = 1.0 / a;
  const double span = ya - 1.0 / b;
  const GaussRule& rule = gauss_legendre(20);
  double sum = 0.0;
  for (double u0 = 0.0; u0 < span; u0 += 1.0) {
    const double u1 = std::min(u0 + 1.0, span);
    const double c = 0.5 * (u0 + u1);
    const double h = 0.5 * (u1 - u0);
    double panel = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      const double u = c + h * rule.nodes[k];
      const double y = ya - u;
      panel += rule.weights[k] * std::exp(-u) / (y * y);
    }
    panel *= h;
    sum += panel;
    if (panel < 1e-18 * sum) break;
  }
  return ya + std::log(sum);
}

double lip_test_value(const PlanePoint& x, const LipTestFn& fn) {
  fn.validate();
  if (!contains_exp(x)) throw DomainError("lip_test_value: point outside the cusp domain");
  if (x.x1 <= fn.r) return 1.0;
  if (x.x1 > fn.d / 2) return 0.0;
  const double total = log_exp_inv_integral(fn.r, fn.d / 2);
  return 1.0 - std::exp(log_exp_inv_integral(fn.r, x.x1) - total);
}

CapacityEstimate lip_test_energy(double r, double d) {
  LipTestFn{r, d}.validate();
  return closed_form(-log_exp_inv_integral(r, d / 2), "1", lip_pair(r, d));
}

CapacityEstimate lip_test_exact_energy(double r, double d) {
  LipTestFn{r, d}.validate();
  return closed_form(kLn2 - log_exp_inv_integral(r, d / 2), "1", lip_pair(r, d));
}

CapacityEstimate lip_test_discrete_energy(double r, double d, int resolution) {
  LipTestFn{r, d}.validate();
  if (resolution < 2) throw DomainError("lip_test_discrete_energy: resolution must be >= 2");
  const double total = log_exp_inv_integral(r, d / 2);
  const double y_lo = 2.0 / d;
  const double y_hi = 1.0 / r;
  std::vector<double> xs(resolution + 1);
  for (int i = 0; i <= resolution; ++i) {
    xs[i] = 1.0 / (y_hi - (y_hi - y_lo) * i / resolution);
  }
  xs.front() = r;
  xs.back() = d / 2;
  double log_energy = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < resolution; ++i) {
    const double a = xs[i];
    const double b = xs[i + 1];
    // Column of width b - a spanning the strip of height 2 e^{-1/x_mid}.
    const double log_du = log_exp_inv_integral(a, b) - total;
    const double mid = 0.5 * (a + b);
    log_energy = log_add(log_energy, 2 * log_du - std::log(b - a) + kLn2 - 1.0 / mid);
  }
  CapacityEstimate est = closed_form(log_energy, "1", lip_pair(r, d));
  est.method = CapacityMethod::GridSolve;
  return est;
}

DecayReport superpoly_decay_check(std::span<const double> s_list,
                                  std::span<const double> r_list,
                                  const std::function<double(double)>& log_energy) {
  if (r_list.size() < 4) throw DomainError("superpoly_decay_check: need at least 4 radii");
  for (std::size_t k = 0; k < r_list.size(); ++k) {
    if (!(r_list[k] > 0.0 && r_list[k] < 0.25)) {
      throw DomainError("superpoly_decay_check: radii must lie in (0, 1/4)");
    }
    if (k > 0 && !(r_list[k] < r_list[k - 1])) {
      throw DomainError("superpoly_decay_check: radii must be strictly decreasing");
    }
  }
  std::vector<double> log_e;
  log_e.reserve(r_list.size());
  for (double r : r_list) log_e.push_back(log_energy(r));

  DecayReport rep;
  rep.pass = !s_list.empty();
  for (double s : s_list) {
    if (!(s > 0.0)) throw DomainError("superpoly_decay_check: s must be positive");
    DecaySeries ser;
    ser.s = s;
    ser.r_values.assign(r_list.begin(), r_list.end());
    for (std::size_t k = 0; k < r_list.size(); ++k) {
      ser.log_ratios.push_back(log_e[k] - s * std::log(r_list[k]));
    }
    const std::size_t n = ser.log_ratios.size();
    bool decreasing = true;
    for (std::size_t k = n / 2; k < n; ++k) {
      if (!(ser.log_ratios[k] < ser.log_ratios[k - 1])) decreasing = false;
    }
    const double peak = *std::max_element(ser.log_ratios.begin(), ser.log_ratios.end());
    ser.pass = decreasing && ser.log_ratios.back() <= peak + std::log(1e-3);
    rep.pass = rep.pass && ser.pass;
    rep.series.push_back(std::move(ser));
  }
  return rep;
}

DecayReport superpoly_decay_check(std::span<const double> s_list,
                                  std::span<const double> r_list, double d) {
  return superpoly_decay_check(s_list, r_list,
                               [d](double r) { return lip_test_energy(r, d).log_value; });
}

CapacityEstimate grid_capacity(const PlaneWeight& weight, const PlanePredicate& f_mask,
                               const PlanePredicate& e_mask, const PlanePredicate& domain_mask,
                               const GridBox& box, const GridSolverConfig& cfg) {
  cfg.validate();
  if (!(box.x_hi > box.x_lo && box.y_hi > box.y_lo)) throw DomainError("grid_capacity: empty box");
  const double h = 1.0 / cfg.resolution;
  const int nx = std::max(2, static_cast<int>(std::ceil((box.x_hi - box.x_lo) / h - 1e-9)));
  const int ny = std::max(2, static_cast<int>(std::ceil((box.y_hi - box.y_lo) / h - 1e-9)));
  auto node = [&](int i, int j) {
    return PlanePoint{box.x_lo + (i + 0.5) * h, box.y_lo + (j + 0.5) * h};
  };

  GridProblem prob(nx, ny);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const PlanePoint x = node(i, j);
      if (!domain_mask(x)) continue;
      const bool in_f = f_mask(x);
      const bool in_e = e_mask(x);
      if (in_f && in_e) throw MaskError("grid_capacity: F and E overlap");
      prob.kind(i, j) = in_f ? NodeKind::Zero : in_e ? NodeKind::One : NodeKind::Free;
    }
  }
  if (prob.count(NodeKind::Zero) == 0) throw MaskError("grid_capacity: F has no grid node");
  if (prob.count(NodeKind::One) == 0) throw MaskError("grid_capacity: E has no grid node");

  auto conductance = [&](int i0, int j0, int i1, int j1) {
    const NodeKind k0 = prob.kind(i0, j0);
    const NodeKind k1 = prob.kind(i1, j1);
    if (k0 == NodeKind::Outside || k1 == NodeKind::Outside) return 0.0;
    PlanePoint a = node(i0, j0);
    PlanePoint b = node(i1, j1);
    double frac = 1.0;
    if ((k0 == NodeKind::Free) != (k1 == NodeKind::Free)) {
      if (k0 != NodeKind::Free) std::swap(a, b);
      const NodeKind fixed = k0 == NodeKind::Free ? k1 : k0;
      frac = std::max(kMinCutFraction,
                      crossing_fraction(a, b, fixed == NodeKind::Zero ? f_mask : e_mask));
    }
    const PlanePoint mid{a.x1 + 0.5 * frac * (b.x1 - a.x1), a.x2 + 0.5 * frac * (b.x2 - a.x2)};
    const double w = weight(mid);
    if (!(w >= 0.0) || !std::isfinite(w)) throw DomainError("grid_capacity: invalid weight");
    return w / frac;
  };
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      if (i + 1 < nx) prob.cx(i, j) = conductance(i, j, i + 1, j);
      if (j + 1 < ny) prob.cy(i, j) = conductance(i, j, i, j + 1);
    }
  }

  const GridSolution sol = solve_condenser(prob, cfg);
  CapacityEstimate est;
  est.value = sol.energy;
  est.log_value = std::log(sol.energy);
  est.method = CapacityMethod::GridSolve;
  est.iterations = sol.iterations;
  est.residual = sol.residual;
  return est;
}

CapacityEstimate annulus_capacity(double r_in, double r_out, const GridSolverConfig& cfg,
                                  double weight) {
  if (!(r_in > 0.0 && r_out > r_in)) throw DomainError("annulus_capacity: need 0 < r_in < r_out");
  cfg.validate();
  const double h = 1.0 / cfg.resolution;
  const double edge = r_out + 3 * h;
  const GridBox box{-edge, edge, -edge, edge};
  CapacityEstimate est = grid_capacity(
      [weight](const PlanePoint&) { return weight; },
      [r_in](const PlanePoint& x) { return x.norm() <= r_in; },
      [r_out](const PlanePoint& x) { return x.norm() >= r_out; },
      [r_out, h](const PlanePoint& x) { return x.norm() < r_out + 2.5 * h; }, box, cfg);
  est.weight_desc = std::to_string(weight);
  est.pair_desc = "F=|x|<=" + std::to_string(r_in) + ", E=|x|>=" + std::to_string(r_out);
  return est;
}

double capala_lower_bound_log(double lambda, double log_L, double log_diam_e, double C) {
  if (!(lambda > 0.0)) throw DomainError("capala_lower_bound: lambda must be positive");
  const double log_arg = 0.5 * (std::log(4.0 / std::numbers::pi) + log_L) - log_diam_e;
  if (!(log_arg > 0.0) || std::isnan(log_arg)) {
    throw DomainError("capala_lower_bound: log argument must exceed 1");
  }
  return C * lambda / (log_arg * log_arg);
}

double capala_lower_bound(double lambda, double L, double diam_e, double C) {
  if (!(L > 0.0) || !(diam_e > 0.0)) {
    throw DomainError("capala_lower_bound: L and diam_e must be positive");
  }
  return capala_lower_bound_log(lambda, std::log(L), std::log(diam_e), C);
}

LogValue diamarvio_bound(double diam_e_prime, double lambda, double eps, double C,
                         double C_tilde) {
  if (!(diam_e_prime > 0.0 && lambda > 0.0 && eps > 0.0 && C > 0.0 && C_tilde > 0.0)) {
    throw DomainError("diamarvio_bound: parameters must be positive");
  }
  const double expo = (1.0 + eps) / lambda;
  const double log_v = std::log(C) - C_tilde * std::exp(-expo * std::log(diam_e_prime));
  return {std::exp(log_v), log_v};
}

}  // namespace cusp
