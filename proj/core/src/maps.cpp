#include "cusp/maps.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "cusp/errors.hpp"

namespace cusp {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxBisection = 200;

double normalize_theta(double theta) {
  // [-pi/2, 3pi/2)
  double t = std::fmod(theta + kPi / 2, 2 * kPi);
  if (t < 0) t += 2 * kPi;
  return t - kPi / 2;
}

double normalize_phi(double phi) {
  // (-pi, pi]
  double t = std::remainder(phi, 2 * kPi);
  if (t <= -kPi) t += 2 * kPi;
  return t;
}

// Preimage angle of an image angle psi for a circle whose throat half-angle
// is atan_H.
PolarPoint invert_angle(double r, double psi, double atan_H) {
  if (std::abs(psi) < atan_H) {
    return PolarPoint::make(r, psi * kPi / (2 * atan_H));
  }
  const double psi_outer = psi < 0 ? psi + 2 * kPi : psi;
  const double theta = (psi_outer + kPi - 2 * atan_H) / (2 - 2 * atan_H / kPi);
  PolarPoint p = PolarPoint::make(r, theta);
  // Rounding can push the seam rays across; they belong to Outer.
  if (p.sector == Sector::Inner) {
    p.theta = psi >= 0 ? kPi / 2 : -kPi / 2;
    p.sector = Sector::Outer;
  }
  return p;
}

}  // namespace

double PlanePoint::norm() const {
  return at_infinity ? std::numeric_limits<double>::infinity() : std::hypot(x1, x2);
}

PolarPoint PolarPoint::make(double r, double theta) {
  PolarPoint p;
  p.r = r;
  p.theta = normalize_theta(theta);
  p.sector = (p.theta > -kPi / 2 && p.theta < kPi / 2) ? Sector::Inner : Sector::Outer;
  return p;
}

PolarPoint to_polar(const PlanePoint& p) {
  if (p.x1 == 0.0 && p.x2 == 0.0) return PolarPoint::make(0.0, 0.0);
  return PolarPoint::make(std::hypot(p.x1, p.x2), std::atan2(p.x2, p.x1));
}

MapChain::MapChain(ProfileParams params)
    : MapChain(params, {Stage::F1, Stage::F2, Stage::F3}) {}

MapChain::MapChain(ProfileParams params, std::vector<Stage> stages)
    : params_(params), stages_(std::move(stages)) {
  if (stages_.empty()) throw DomainError("MapChain: empty stage list");
  for (std::size_t i = 1; i < stages_.size(); ++i) {
    if (static_cast<int>(stages_[i]) <= static_cast<int>(stages_[i - 1])) {
      throw DomainError("MapChain: stages must appear in order f1, f2, f3");
    }
  }
}

MapChain MapChain::parse(const std::string& text, ProfileParams params) {
  std::string lower;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) {
      lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  if (lower == "all" || lower == "full") return MapChain(params);
  std::vector<Stage> stages;
  std::stringstream ss(lower);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "f1") {
      stages.push_back(Stage::F1);
    } else if (item == "f2") {
      stages.push_back(Stage::F2);
    } else if (item == "f3") {
      stages.push_back(Stage::F3);
    } else {
      throw DomainError("MapChain: unknown stage '" + item + "'");
    }
  }
  return MapChain(params, std::move(stages));
}

bool MapChain::has(Stage s) const {
  return std::find(stages_.begin(), stages_.end(), s) != stages_.end();
}

std::string MapChain::describe() const {
  std::string out;
  for (Stage s : stages_) {
    if (!out.empty()) out += ",";
    out += s == Stage::F1 ? "f1" : s == Stage::F2 ? "f2" : "f3";
  }
  return out;
}

PlanePoint mobius_f1(const PlanePoint& z) {
  if (z.at_infinity) return {-1.0, 0.0};
  if (z.x1 == 1.0 && z.x2 == 0.0) return PlanePoint::infinity();
  const std::complex<double> c = z.z();
  return PlanePoint::from_complex((c + 1.0) / (1.0 - c));
}

PlanePoint mobius_f1_inv(const PlanePoint& w) {
  if (w.at_infinity) return {1.0, 0.0};
  if (w.x1 == -1.0 && w.x2 == 0.0) return PlanePoint::infinity();
  const std::complex<double> c = w.z();
  return PlanePoint::from_complex((c - 1.0) / (c + 1.0));
}

PlanePoint mobius_f3(const PlanePoint& z) {
  if (z.at_infinity) return {1.0, 0.0};
  if (z.x1 == -1.0 && z.x2 == 0.0) return PlanePoint::infinity();
  const std::complex<double> c = z.z();
  return PlanePoint::from_complex(c / (c + 1.0));
}

PlanePoint mobius_f3_inv(const PlanePoint& w) {
  if (w.at_infinity) return {-1.0, 0.0};
  if (w.x1 == 1.0 && w.x2 == 0.0) return PlanePoint::infinity();
  const std::complex<double> c = w.z();
  return PlanePoint::from_complex(c / (1.0 - c));
}

double cusp_image_angle(double theta, Sector sector, double atan_H) {
  if (sector == Sector::Inner) return 2 * theta / kPi * atan_H;
  const double t = theta < kPi / 2 ? theta + 2 * kPi : theta;
  return 2 * t - kPi + (2 - 2 * t / kPi) * atan_H;
}

PlanePoint cusp_map_f2(const PolarPoint& p, const ProfileParams& params) {
  if (p.r == 0.0) return {0.0, 0.0};
  double radius = 0.0;
  double atan_H = 0.0;
  if (p.r <= params.r_max()) {
    const ProfileEval e = eval_profile(p.r, params);
    radius = e.G;
    atan_H = e.atan_H;
  } else {
    // |x| h(x / |x|), h the restriction to the boundary circle.
    const ProfileEval e = eval_profile(params.r_max(), params);
    radius = p.r / params.r_max() * e.G;
    atan_H = e.atan_H;
  }
  const double psi = cusp_image_angle(p.theta, p.sector, atan_H);
  return {radius * std::cos(psi), radius * std::sin(psi)};
}

PlanePoint cusp_map_f2(const PlanePoint& x, const ProfileParams& params) {
  if (x.at_infinity) return PlanePoint::infinity();
  return cusp_map_f2(to_polar(x), params);
}

PolarPoint cusp_map_f2_inv(const PlanePoint& w, const ProfileParams& params,
                           double radial_limit) {
  if (w.at_infinity) throw RangeError("cusp_map_f2_inv: point at infinity");
  const double rho = w.norm();
  if (rho == 0.0) return PolarPoint::make(0.0, 0.0);
  const double psi = std::atan2(w.x2, w.x1);

  const ProfileEval edge = eval_profile(params.r_max(), params);
  if (rho >= edge.G) {
    const double r = params.r_max() * rho / edge.G;
    if (r > params.r_max() * radial_limit) {
      throw RangeError("cusp_map_f2_inv: |w| beyond the configured radial limit");
    }
    return invert_angle(r, psi, edge.atan_H);
  }

  double lo = std::numeric_limits<double>::denorm_min();
  double hi = params.r_max();
  if (eval_profile(lo, params).G > rho) {
    throw RangeError("cusp_map_f2_inv: preimage radius below the double range");
  }
  int it = 0;
  for (;; ++it) {
    if (it > kMaxBisection) throw ConvergenceError("cusp_map_f2_inv: bisection did not converge");
    const double mid = hi / lo > 2.0 ? std::sqrt(lo) * std::sqrt(hi) : lo + 0.5 * (hi - lo);
    if (!(mid > lo && mid < hi)) break;
    if (eval_profile(mid, params).G < rho) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const ProfileEval e_lo = eval_profile(lo, params);
  const ProfileEval e_hi = eval_profile(hi, params);
  const ProfileEval& e = (rho - e_lo.G < e_hi.G - rho) ? e_lo : e_hi;
  return invert_angle(e.r, psi, e.atan_H);
}

LogPolarPoint cusp_map_f2_inv_log(const PlanePoint& w, const ProfileParams& params) {
  if (w.at_infinity) throw RangeError("cusp_map_f2_inv_log: point at infinity");
  const double rho = w.norm();
  const ProfileEval edge = eval_profile(params.r_max(), params);
  if (!(rho > 0.0) || rho >= edge.G) {
    throw RangeError("cusp_map_f2_inv_log: need 0 < |w| < G(r_max)");
  }
  double lo = edge.L2;  // G decreasing in L2
  double hi = 700.0;
  if (eval_profile_loglog(hi, params).G > rho) {
    throw RangeError("cusp_map_f2_inv_log: |w| below G at L2 = 700");
  }
  for (int it = 0;; ++it) {
    if (it > kMaxBisection) {
      throw ConvergenceError("cusp_map_f2_inv_log: bisection did not converge");
    }
    const double mid = lo + 0.5 * (hi - lo);
    if (!(mid > lo && mid < hi)) break;
    if (eval_profile_loglog(mid, params).G > rho) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const ProfileEval e = eval_profile_loglog(hi, params);
  const PolarPoint angle = invert_angle(1.0, std::atan2(w.x2, w.x1), e.atan_H);
  return {e.log_r, angle.theta};
}

SourceOffset source_offset(const LogPolarPoint& p, const MapChain& chain) {
  if (!chain.has(Stage::F1)) return {p.log_r, normalize_phi(p.theta)};
  // x + 1 = 2w / (1 + w)
  const std::complex<double> w = std::polar(std::exp(p.log_r), p.theta);
  const std::complex<double> one_plus_w = 1.0 + w;
  return {std::numbers::ln2 + p.log_r - std::log(std::abs(one_plus_w)),
          normalize_phi(p.theta - std::arg(one_plus_w))};
}

PlanePoint source_point(const SourceOffset& o, const MapChain& chain) {
  const double base = chain.has(Stage::F1) ? -1.0 : 0.0;
  const double rho = std::exp(o.log_rho);
  return {base + rho * std::cos(o.phi), rho * std::sin(o.phi)};
}

PlanePoint apply_chain(const PlanePoint& x, const MapChain& chain) {
  PlanePoint z = x;
  for (Stage s : chain.stages()) {
    switch (s) {
      case Stage::F1: z = mobius_f1(z); break;
      case Stage::F2: z = cusp_map_f2(z, chain.params()); break;
      case Stage::F3: z = mobius_f3(z); break;
    }
  }
  return z;
}

PlanePoint apply_chain_inv(const PlanePoint& y, const MapChain& chain) {
  PlanePoint z = y;
  const auto& st = chain.stages();
  for (auto it = st.rbegin(); it != st.rend(); ++it) {
    switch (*it) {
      case Stage::F1: z = mobius_f1_inv(z); break;
      case Stage::F2: {
        if (z.at_infinity) break;
        const PolarPoint p = cusp_map_f2_inv(z, chain.params());
        z = {p.r * std::cos(p.theta), p.r * std::sin(p.theta)};
        break;
      }
      case Stage::F3: z = mobius_f3_inv(z); break;
    }
  }
  return z;
}

std::vector<BoundaryTracePoint> boundary_image_trace(std::span<const double> t_values) {
  std::vector<BoundaryTracePoint> out;
  out.reserve(t_values.size());
  for (double t : t_values) {
    if (!(t > 0.0)) throw DomainError("boundary_image_trace: t must be positive");
    BoundaryTracePoint bp;
    bp.t = t;
    bp.cusp_point = {t, std::exp(-1.0 / t)};
    bp.image = mobius_f3(bp.cusp_point);
    bp.residual = bp.image.x1 - t;
    out.push_back(bp);
  }
  return out;
}

QuadraticFit fit_boundary_residual(std::span<const BoundaryTracePoint> trace, double t_lo,
                                   double t_hi) {
  // Least squares on the scaled residual |res| / t^2 - C, so every sample in a
  // log-spaced window carries equal weight.
  double sum = 0.0;
  QuadraticFit fit;
  for (const auto& bp : trace) {
    if (bp.t < t_lo || bp.t > t_hi) continue;
    sum += std::abs(bp.residual) / (bp.t * bp.t);
    ++fit.points;
  }
  if (fit.points == 0) throw DomainError("fit_boundary_residual: empty fit window");
  fit.C = sum / fit.points;
  return fit;
}

}  // namespace cusp
