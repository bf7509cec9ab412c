#include "cusp/distortion.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "cusp/errors.hpp"

namespace cusp {
namespace {

constexpr double kPi = std::numbers::pi;

double outer_theta(double theta) { return theta < kPi / 2 ? theta + 2 * kPi : theta; }

// Cusp-sector matrix multiplied by `scale` (1 for the plain differential, r
// for the scaled one); r_* are r times the profile derivatives.
Jacobian2 sector_matrix(const ProfileEval& e, const PolarPoint& base, double r_gp, double r_Hp,
                        double inv_r) {
  const double s = std::sqrt(1.0 + e.H * e.H);
  Jacobian2 m;
  m.base = base;
  m.a11 = (r_gp * (1.0 + e.H * e.H) + e.g * e.H * r_Hp) / s;
  m.a12 = 0.0;
  if (base.sector == Sector::Inner) {
    m.a21 = 2.0 * base.theta / kPi * e.g * r_Hp / s;
    m.a22 = 2.0 / kPi * e.g * inv_r * s * e.atan_H;
  } else {
    m.a21 = (2.0 - 2.0 * outer_theta(base.theta) / kPi) * e.g * r_Hp / s;
    m.a22 = (2.0 - 2.0 / kPi * e.atan_H) * e.g * inv_r * s;
  }
  return m;
}

Jacobian2 extension_matrix(const PolarPoint& p, const ProfileParams& params) {
  const ProfileEval e = eval_profile(params.r_max(), params);
  const double scale = e.G / params.r_max();
  const double dL = p.sector == Sector::Inner ? 2.0 / kPi * e.atan_H
                                              : 2.0 - 2.0 / kPi * e.atan_H;
  Jacobian2 m;
  m.base = p;
  m.a11 = scale;
  m.a22 = scale * dL;
  return m;
}

std::complex<double> mobius_derivative(Stage s, std::complex<double> z) {
  if (s == Stage::F1) return 2.0 / ((1.0 - z) * (1.0 - z));
  return 1.0 / ((1.0 + z) * (1.0 + z));
}

CartesianJacobian multiply(const CartesianJacobian& a, const CartesianJacobian& b) {
  return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
          a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22};
}

CartesianJacobian rotation(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c, -s, s, c};
}

}  // namespace

Jacobian2 jacobian_f2_analytic(const PolarPoint& p, const ProfileParams& params) {
  if (!(p.r > 0.0)) throw DomainError("jacobian_f2_analytic: r must be positive");
  if (p.r > params.r_max()) return extension_matrix(p, params);
  const ProfileEval e = eval_profile(p.r, params);
  // Plain differential: g'(r) and H'(r) directly, g / r in the lower-right.
  return sector_matrix(e, p, e.g_prime, e.H_prime, 1.0 / p.r);
}

Jacobian2 jacobian_f2_scaled(const LogPolarPoint& q, const ProfileParams& params) {
  const PolarPoint base = PolarPoint::make(std::exp(q.log_r), q.theta);
  const ProfileEval e = eval_profile_log(q.log_r, params);
  return sector_matrix(e, base, e.r_g_prime, e.r_H_prime, 1.0);
}

Jacobian2 jacobian_fd(const PolarPoint& p, const ProfileParams& params, double h) {
  if (!(h > 0.0)) throw DomainError("jacobian_fd: step must be positive");
  if (p.r - 2 * h <= 0.0 || std::abs(p.r - params.r_max()) <= 2 * h) {
    throw DomainError("jacobian_fd: stencil touches r = 0 or r = r_max");
  }
  const double ht = h / p.r;
  for (double seam : {-kPi / 2, kPi / 2, 3 * kPi / 2}) {
    if (std::abs(p.theta - seam) <= 2 * ht) {
      throw SeamError("jacobian_fd: stencil straddles a sector seam");
    }
  }
  auto f = [&](double r, double theta) {
    return cusp_map_f2(PolarPoint::make(r, theta), params);
  };
  const PlanePoint rp = f(p.r + h, p.theta);
  const PlanePoint rm = f(p.r - h, p.theta);
  const PlanePoint tp = f(p.r, p.theta + ht);
  const PlanePoint tm = f(p.r, p.theta - ht);
  const PlanePoint c = f(p.r, p.theta);

  const double dr1 = (rp.x1 - rm.x1) / (2 * h);
  const double dr2 = (rp.x2 - rm.x2) / (2 * h);
  const double dt1 = (tp.x1 - tm.x1) / (2 * ht);
  const double dt2 = (tp.x2 - tm.x2) / (2 * ht);
  const double psi = std::atan2(c.x2, c.x1);
  const double er1 = std::cos(psi);
  const double er2 = std::sin(psi);

  Jacobian2 m;
  m.base = p;
  m.a11 = er1 * dr1 + er2 * dr2;
  m.a12 = (er1 * dt1 + er2 * dt2) / p.r;
  m.a21 = -er2 * dr1 + er1 * dr2;
  m.a22 = (-er2 * dt1 + er1 * dt2) / p.r;
  return m;
}

double op_norm(const Jacobian2& m) {
  const double scale = std::max({std::abs(m.a11), std::abs(m.a12), std::abs(m.a21),
                                 std::abs(m.a22)});
  if (scale == 0.0 || !std::isfinite(scale)) return scale;
  const double a = m.a11 / scale, b = m.a12 / scale, c = m.a21 / scale, d = m.a22 / scale;
  const double s1 = 0.5 * std::hypot(a + d, c - b);
  const double s2 = 0.5 * std::hypot(a - d, c + b);
  return (s1 + s2) * scale;
}

DistortionSample distortion_K(const Jacobian2& m) {
  DistortionSample s;
  s.base = m.base;
  s.op_norm = op_norm(m);
  s.jac_det = m.a11 * m.a22 - m.a12 * m.a21;
  const double scale = std::max({std::abs(m.a11), std::abs(m.a12), std::abs(m.a21),
                                 std::abs(m.a22)});
  if (!std::isfinite(scale) || scale == 0.0) return s;
  // K is invariant under scaling of the matrix.
  Jacobian2 n = m;
  n.a11 /= scale;
  n.a12 /= scale;
  n.a21 /= scale;
  n.a22 /= scale;
  const double det = n.a11 * n.a22 - n.a12 * n.a21;
  if (!(det > 0.0)) return s;
  const double norm = op_norm(n);
  s.K = std::max(1.0, norm * norm / det);
  return s;
}

double distortion_K_log(const LogPolarPoint& p, const ProfileParams& params) {
  if (p.log_r > std::log(params.r_max())) {
    return distortion_K(jacobian_f2_analytic(PolarPoint::make(std::exp(p.log_r), p.theta),
                                             params)).K;
  }
  return distortion_K(jacobian_f2_scaled(p, params)).K;
}

double chain_distortion_at_f2_source(const LogPolarPoint& p, const MapChain& chain) {
  if (!chain.has(Stage::F2)) return 1.0;
  if (!std::isfinite(p.log_r)) return 1.0;
  if (p.log_r > std::log(chain.params().r_max())) {
    return distortion_K(jacobian_f2_analytic(PolarPoint::make(std::exp(p.log_r), p.theta),
                                             chain.params()))
        .K;
  }
  return distortion_K_log(p, chain.params());
}

std::vector<double> PolarGrid::radii() const {
  if (!(r_min > 0.0) || !(r_max >= r_min) || n_r < 1) {
    throw DomainError("PolarGrid: need 0 < r_min <= r_max and n_r >= 1");
  }
  std::vector<double> out(n_r);
  for (int i = 0; i < n_r; ++i) {
    const double t = n_r == 1 ? 0.0 : static_cast<double>(i) / (n_r - 1);
    out[i] = log_spacing ? std::exp(std::log(r_min) + t * (std::log(r_max) - std::log(r_min)))
                         : r_min + t * (r_max - r_min);
  }
  out.back() = r_max;
  out.front() = r_min;
  return out;
}

std::vector<double> PolarGrid::angles() const {
  if (n_theta < 1) throw DomainError("PolarGrid: need n_theta >= 1");
  std::vector<double> out(n_theta);
  for (int j = 0; j < n_theta; ++j) {
    out[j] = -kPi / 2 + (j + 0.5) * 2 * kPi / n_theta;
  }
  return out;
}

std::vector<DistortionSample> distortion_field(const PolarGrid& grid,
                                               const ProfileParams& params) {
  const auto radii = grid.radii();
  const auto angles = grid.angles();
  std::vector<DistortionSample> out;
  out.reserve(radii.size() * angles.size());
  for (double r : radii) {
    for (double th : angles) {
      out.push_back(distortion_K(jacobian_f2_analytic(PolarPoint::make(r, th), params)));
    }
  }
  return out;
}

std::vector<DistortionSample> distortion_field(const PolarGrid& grid, const MapChain& chain) {
  const auto radii = grid.radii();
  const auto angles = grid.angles();
  std::vector<DistortionSample> out;
  out.reserve(radii.size() * angles.size());
  for (double r : radii) {
    for (double th : angles) {
      const PlanePoint w{r * std::cos(th), r * std::sin(th)};
      const PlanePoint x = chain.has(Stage::F1) ? mobius_f1_inv(w) : w;
      DistortionSample s = distortion_K_chain(x, chain);
      s.base = PolarPoint::make(r, th);
      out.push_back(s);
    }
  }
  return out;
}

BoundRatioReport bound_ratio_fit(std::span<const double> r_values, double theta,
                                 const ProfileParams& params, double band_lo,
                                 double band_hi) {
  if (r_values.empty()) throw DomainError("bound_ratio_fit: no radii");
  BoundRatioReport rep;
  rep.theta = theta;
  rep.band_lo = band_lo;
  rep.band_hi = band_hi;
  rep.min_ratio = std::numeric_limits<double>::infinity();
  rep.max_ratio = -std::numeric_limits<double>::infinity();
  for (double r : r_values) {
    const ProfileEval e = eval_profile(r, params);
    BoundRatioRow row;
    row.r = r;
    row.K = distortion_K(jacobian_f2_analytic(PolarPoint::make(r, theta), params)).K;
    row.bound = e.L1 * e.L2;
    row.ratio = row.K / row.bound;
    rep.min_ratio = std::min(rep.min_ratio, row.ratio);
    rep.max_ratio = std::max(rep.max_ratio, row.ratio);
    rep.rows.push_back(row);
  }
  rep.pass = rep.min_ratio >= band_lo && rep.max_ratio <= band_hi;

  // Leading correction to the ratio is linear in H = L2 / L1; extrapolate to
  // H -> 0 with a least-squares line over the smaller half of the radii.
  std::vector<BoundRatioRow> sorted = rep.rows;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.r < b.r; });
  const std::size_t n = std::max<std::size_t>(2, (sorted.size() + 1) / 2);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < std::min(n, sorted.size()); ++i) {
    const ProfileEval e = eval_profile(sorted[i].r, params);
    const double x = e.H;
    sx += x;
    sy += sorted[i].ratio;
    sxx += x * x;
    sxy += x * sorted[i].ratio;
    ++used;
  }
  const double den = used * sxx - sx * sx;
  rep.limit_estimate = (used >= 2 && den != 0.0)
                           ? (sy * sxx - sx * sxy) / den
                           : sorted.front().ratio;
  return rep;
}

double max_ratio_in_window(const BoundRatioReport& report, double r_lo, double r_hi) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& row : report.rows) {
    if (row.r >= r_lo && row.r <= r_hi) best = std::max(best, row.ratio);
  }
  return best;
}

CartesianJacobian chain_jacobian(const PlanePoint& x, const MapChain& chain) {
  if (x.at_infinity) throw DomainError("chain_jacobian: point at infinity");
  CartesianJacobian J;
  PlanePoint z = x;
  for (Stage s : chain.stages()) {
    if (z.at_infinity) throw DomainError("chain_jacobian: stage pole reached");
    if (s == Stage::F2) {
      const PolarPoint p = to_polar(z);
      const Jacobian2 m = jacobian_f2_analytic(p, chain.params());
      const PlanePoint image = cusp_map_f2(p, chain.params());
      const double psi = std::atan2(image.x2, image.x1);
      const CartesianJacobian polar{m.a11, m.a12, m.a21, m.a22};
      J = multiply(multiply(multiply(rotation(psi), polar), rotation(-p.theta)), J);
      z = image;
    } else {
      const std::complex<double> d = mobius_derivative(s, z.z());
      J = multiply({d.real(), -d.imag(), d.imag(), d.real()}, J);
      z = s == Stage::F1 ? mobius_f1(z) : mobius_f3(z);
    }
  }
  return J;
}

DistortionSample distortion_K_chain(const PlanePoint& x, const MapChain& chain) {
  const CartesianJacobian J = chain_jacobian(x, chain);
  Jacobian2 m;
  m.a11 = J.a11;
  m.a12 = J.a12;
  m.a21 = J.a21;
  m.a22 = J.a22;
  m.base = to_polar(chain.has(Stage::F1) ? mobius_f1(x) : x);
  return distortion_K(m);
}

}  // namespace cusp
