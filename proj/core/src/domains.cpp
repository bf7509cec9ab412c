#include "cusp/domains.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cusp/errors.hpp"

namespace cusp {
namespace {

constexpr double kX1Floor = 1e-300;
// Below this cusp abscissa the seam preimage radius exp(log c_g - e^{1/s})
// has a log that overflows.
constexpr double kSFloor = 1.0 / 700.0;

double log_add(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(std::min(a, b) - m));
}

// log(e^a - e^b) for a >= b.
double log_sub(double a, double b) {
  if (b == -std::numeric_limits<double>::infinity()) return a;
  if (a == b) return -std::numeric_limits<double>::infinity();
  return a + std::log1p(-std::exp(b - a));
}

double cusp_width(double x1) { return x1 > 0.0 ? std::exp(-1.0 / x1) : 0.0; }

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> out(n);
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int i = 0; i < n; ++i) out[i] = std::exp(a + (b - a) * i / (n - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

double image_radius(double s, const MapChain& chain) {
  const PlanePoint c{s, cusp_width(s)};
  return chain.has(Stage::F3) ? mobius_f3(c).norm() : c.norm();
}

}  // namespace

PowerCuspDomain::PowerCuspDomain(double s) : s_(s) {
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("PowerCuspDomain: s must be > 0");
}

double PowerCuspDomain::radius() const { return std::hypot(s_ + 1.0, 1.0); }

bool contains_exp(const PlanePoint& p, const ExpCuspDomain& d) {
  if (p.at_infinity) return false;
  if (p.x1 > 0.0 && p.x1 < 1.0 && std::abs(p.x2) < cusp_width(p.x1)) return true;
  return std::hypot(p.x1 - d.x0.x1, p.x2 - d.x0.x2) < d.r0;
}

bool contains_power(const PlanePoint& p, const PowerCuspDomain& d) {
  if (p.at_infinity) return false;
  if (p.x1 > 0.0 && p.x1 < 1.0 && std::abs(p.x2) < std::pow(p.x1, 1.0 + d.s())) return true;
  const PlanePoint c = d.center();
  return std::hypot(p.x1 - c.x1, p.x2 - c.x2) < d.radius();
}

double arc_x1_max(double t) {
  if (!(t > 0.0 && t < 0.5)) throw DomainError("arc_x1_max: need 0 < t < 1/2");
  double lo = 0.0;
  double hi = t;
  for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double w = cusp_width(mid);
    if (std::hypot(mid, w) <= t) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

BoundaryArc boundary_arc(double t, int n, const ExpCuspDomain&) {
  if (!(t > 0.0 && t < 0.5)) throw DomainError("boundary_arc: need 0 < t < 1/2");
  if (n < 2) throw DomainError("boundary_arc: need n >= 2");
  const double hi = arc_x1_max(t);
  const std::vector<double> xs = log_grid(kX1Floor, hi, n);
  BoundaryArc arc;
  arc.t = t;
  arc.samples.reserve(2 * n);
  for (double sign : {1.0, -1.0}) {
    for (double x1 : xs) arc.samples.push_back({x1, sign * cusp_width(x1)});
  }
  return arc;
}

double arc_diameter(std::span<const PlanePoint> samples) {
  double best = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (std::size_t j = i + 1; j < samples.size(); ++j) {
      best = std::max(best, std::hypot(samples[i].x1 - samples[j].x1,
                                       samples[i].x2 - samples[j].x2));
    }
  }
  return best;
}

double arc_diameter(const BoundaryArc& arc) { return arc_diameter(arc.samples); }

ImageArc image_boundary_arc(double t, const MapChain& chain, int n) {
  if (!(t > 0.0 && t < 0.5)) throw DomainError("image_boundary_arc: need 0 < t < 1/2");
  if (n < 2) throw DomainError("image_boundary_arc: need n >= 2");
  if (!chain.has(Stage::F2)) throw DomainError("image_boundary_arc: chain has no cusp stage");
  const ProfileParams& params = chain.params();
  const double s_cap = eval_g(params.r_max(), params);
  if (image_radius(s_cap, chain) <= t) {
    throw DomainError("image_boundary_arc: t reaches past the cusp part of the boundary");
  }
  double lo = 0.0;
  double hi = s_cap;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (image_radius(mid, chain) <= t) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  ImageArc arc;
  arc.t = t;
  arc.s_max = lo;
  arc.s_values = lo > kSFloor ? log_grid(kSFloor, lo, n) : std::vector<double>(n, lo);
  arc.samples.reserve(2 * n);
  for (double sign : {1.0, -1.0}) {
    for (double s : arc.s_values) {
      const PlanePoint c{s, sign * cusp_width(s)};
      arc.samples.push_back(chain.has(Stage::F3) ? mobius_f3(c) : c);
    }
  }
  return arc;
}

LogLength preimage_arc_diameter(double t, const MapChain& chain, int n) {
  const ImageArc arc = image_boundary_arc(t, chain, n);
  const ProfileParams& params = chain.params();
  const bool with_f1 = chain.has(Stage::F1);

  // Source points are w = +-i r on the seam rays (r = 0 for the tip). With f1
  // the source is x = f1^{-1}(w) and x - x' = 2 (w - w') / ((1 + w)(1 + w')).
  struct Node {
    double log_r;
    int branch;  // +1, -1, 0 for the tip
    double log_scale;  // -log|1 + w|
  };
  std::vector<Node> nodes;
  nodes.push_back({-std::numeric_limits<double>::infinity(), 0, 0.0});
  for (int branch : {1, -1}) {
    for (double s : arc.s_values) {
      const double lr = eval_g_inverse_log(s, params);
      const double r = std::exp(lr);
      nodes.push_back({lr, branch, with_f1 ? -0.5 * std::log1p(r * r) : 0.0});
    }
  }

  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      const Node& a = nodes[i];
      const Node& b = nodes[j];
      double log_gap;
      if (a.branch == 0 || b.branch == 0 || a.branch != b.branch) {
        log_gap = log_add(a.log_r, b.log_r);
      } else {
        log_gap = log_sub(std::max(a.log_r, b.log_r), std::min(a.log_r, b.log_r));
      }
      double ld = log_gap;
      if (with_f1) ld += std::log(2.0) + a.log_scale + b.log_scale;
      best = std::max(best, ld);
    }
  }
  return {std::exp(best), best};
}

}  // namespace cusp
