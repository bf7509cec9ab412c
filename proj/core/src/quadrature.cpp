#include "cusp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>

#include "cusp/distortion.hpp"
#include "cusp/errors.hpp"
#include "cusp/gauss_legendre.hpp"

namespace cusp {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxSubAnnuli = 512;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

GaussRule compute_rule(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Final derivative at the converged node.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n == 1 ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  std::reverse(rule.nodes.begin(), rule.nodes.end());
  std::reverse(rule.weights.begin(), rule.weights.end());
  return rule;
}

double log_sum_exp(std::span<const double> terms) {
  double m = kNegInf;
  for (double t : terms) m = std::max(m, t);
  if (m == kNegInf) return kNegInf;
  double s = 0.0;
  for (double t : terms) s += std::exp(t - m);
  return m + std::log(s);
}

double log_add_exp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(std::min(a, b) - m));
}

// Sector ranges of the angular integration.
constexpr double kSectorStart[2] = {-kPi / 2, kPi / 2};

}  // namespace

const GaussRule& gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: need n >= 1");
  static std::mutex mutex;
  static std::map<int, GaussRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
  return it->second;
}

AnnularScheme AnnularScheme::dyadic(int k_first, int k_last, int annuli_per_octave,
                                    int radial_nodes, int angular_nodes) {
  AnnularScheme s;
  for (int k = k_first; k <= k_last; ++k) s.log_eps.push_back(-k * std::numbers::ln2);
  s.annuli_per_octave = annuli_per_octave;
  s.radial_nodes = radial_nodes;
  s.angular_nodes = angular_nodes;
  s.validate();
  return s;
}

std::vector<double> AnnularScheme::eps_list() const {
  std::vector<double> out;
  out.reserve(log_eps.size());
  for (double l : log_eps) out.push_back(std::exp(l));
  return out;
}

void AnnularScheme::validate() const {
  if (log_eps.empty()) throw DomainError("AnnularScheme: empty eps list");
  if (!(log_eps.front() < 0.0)) throw DomainError("AnnularScheme: eps must be < 1");
  for (std::size_t i = 0; i < log_eps.size(); ++i) {
    if (!std::isfinite(log_eps[i])) throw DomainError("AnnularScheme: non-finite eps");
    if (i > 0 && !(log_eps[i] < log_eps[i - 1])) {
      throw DomainError("AnnularScheme: eps list must be strictly decreasing");
    }
  }
  if (radial_nodes < 2 || angular_nodes < 2 || annuli_per_octave < 1) {
    throw DomainError("AnnularScheme: node counts must be >= 2");
  }
}

AnnularScheme AnnularScheme::refined() const {
  AnnularScheme s = *this;
  s.annuli_per_octave *= 2;
  s.radial_nodes *= 2;
  s.angular_nodes *= 2;
  return s;
}

double integrate_annulus(const std::function<double(double, double)>& field, double r_in,
                         double r_out, int radial_nodes, int angular_nodes) {
  if (!(r_in > 0.0) || !(r_out > r_in)) {
    throw DomainError("integrate_annulus: need 0 < r_in < r_out");
  }
  const GaussRule& rad = gauss_legendre(radial_nodes);
  const GaussRule& ang = gauss_legendre(angular_nodes);
  // r dr = r^2 dv with v = log r.
  const double v_lo = std::log(r_in);
  const double v_hi = std::log(r_out);
  const double vc = 0.5 * (v_lo + v_hi);
  const double vh = 0.5 * (v_hi - v_lo);
  double total = 0.0;
  for (std::size_t i = 0; i < rad.nodes.size(); ++i) {
    const double v = vc + vh * rad.nodes[i];
    const double r = std::exp(v);
    double ring = 0.0;
    for (double start : kSectorStart) {
      const double tc = start + kPi / 2;
      for (std::size_t j = 0; j < ang.nodes.size(); ++j) {
        const double f = field(r, tc + kPi / 2 * ang.nodes[j]);
        if (!std::isfinite(f)) throw NodeError("integrate_annulus: non-finite field value");
        ring += ang.weights[j] * kPi / 2 * f;
      }
    }
    total += rad.weights[i] * vh * r * r * ring;
  }
  return total;
}

double log_integrate_annulus(const std::function<double(const LogPolarPoint&)>& log_field,
                             double v_lo, double v_hi, int radial_nodes, int angular_nodes) {
  if (!(v_hi > v_lo)) throw DomainError("log_integrate_annulus: need v_lo < v_hi");
  const GaussRule& rad = gauss_legendre(radial_nodes);
  const GaussRule& ang = gauss_legendre(angular_nodes);
  const double vc = 0.5 * (v_lo + v_hi);
  const double vh = 0.5 * (v_hi - v_lo);
  std::vector<double> terms;
  terms.reserve(rad.nodes.size() * ang.nodes.size() * 2);
  for (std::size_t i = 0; i < rad.nodes.size(); ++i) {
    const double v = vc + vh * rad.nodes[i];
    const double log_wr = std::log(rad.weights[i] * vh);
    for (double start : kSectorStart) {
      const double tc = start + kPi / 2;
      for (std::size_t j = 0; j < ang.nodes.size(); ++j) {
        const double lf = log_field({-v, tc + kPi / 2 * ang.nodes[j]});
        if (std::isnan(lf) || lf == std::numeric_limits<double>::infinity()) {
          throw NodeError("log_integrate_annulus: non-finite integrand");
        }
        terms.push_back(lf - 2.0 * v + log_wr + std::log(ang.weights[j] * kPi / 2));
      }
    }
  }
  return log_sum_exp(terms);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Convergent: return "Convergent";
    case Verdict::Divergent: return "Divergent";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

Verdict classify_log_increments(std::span<const double> log_increments) {
  const std::size_t n = log_increments.size();
  if (n < 6) throw InsufficientDataError("classify: need at least 6 partials");
  bool shrinking = true;
  bool growing = true;
  for (std::size_t k = n - 3; k < n; ++k) {
    const double lr = log_increments[k] - log_increments[k - 1];
    if (!(lr <= std::log(0.9))) shrinking = false;
    if (!(lr >= std::log(1.1))) growing = false;
  }
  if (shrinking) return Verdict::Convergent;
  if (growing) return Verdict::Divergent;
  return Verdict::Inconclusive;
}

Verdict classify(std::span<const double> partials) {
  std::vector<double> log_inc;
  log_inc.reserve(partials.size());
  double prev = 0.0;
  for (double p : partials) {
    const double inc = p - prev;
    log_inc.push_back(inc > 0.0 ? std::log(inc) : (inc == 0.0 ? kNegInf : std::nan("")));
    prev = p;
  }
  return classify_log_increments(log_inc);
}

IntegrabilityReport integrate_log_field(
    const std::function<double(const LogPolarPoint&)>& log_field, const AnnularScheme& scheme,
    std::string integrand) {
  scheme.validate();
  IntegrabilityReport rep;
  rep.integrand = std::move(integrand);
  double v_prev = 0.0;
  double log_total = kNegInf;
  std::vector<double> log_incs;
  for (double le : scheme.log_eps) {
    const double v_next = -le;
    const double span = v_next - v_prev;
    const int n_sub = std::clamp(
        static_cast<int>(std::ceil(scheme.annuli_per_octave * span / std::numbers::ln2 - 1e-9)),
        1, kMaxSubAnnuli);
    std::vector<double> pieces;
    pieces.reserve(n_sub);
    for (int s = 0; s < n_sub; ++s) {
      const double a = v_prev + span * s / n_sub;
      const double b = s + 1 == n_sub ? v_next : v_prev + span * (s + 1) / n_sub;
      pieces.push_back(
          log_integrate_annulus(log_field, a, b, scheme.radial_nodes, scheme.angular_nodes));
    }
    const double log_inc = log_sum_exp(pieces);
    log_total = log_add_exp(log_total, log_inc);
    PartialIntegral p;
    p.log_eps = le;
    p.eps = std::exp(le);
    p.log_value = log_total;
    p.value = std::exp(log_total);
    p.log_increment = log_inc;
    if (!log_incs.empty()) rep.log_increment_ratios.push_back(log_inc - log_incs.back());
    log_incs.push_back(log_inc);
    rep.partials.push_back(p);
    v_prev = v_next;
  }
  rep.verdict = log_incs.size() >= 6 ? classify_log_increments(log_incs) : Verdict::Inconclusive;
  return rep;
}

IntegrabilityReport integral_K_pow(double p, const AnnularScheme& scheme, const MapChain& chain) {
  if (!(p > 0.0)) throw DomainError("integral_K_pow: p must be positive");
  return integrate_log_field(
      [&](const LogPolarPoint& q) { return p * std::log(chain_distortion_at_f2_source(q, chain)); },
      scheme, "K^" + std::to_string(p));
}

IntegrabilityReport integral_exp_K(double lambda, const AnnularScheme& scheme,
                                   const MapChain& chain) {
  if (!(lambda > 0.0)) throw DomainError("integral_exp_K: lambda must be positive");
  return integrate_log_field(
      [&](const LogPolarPoint& q) { return lambda * chain_distortion_at_f2_source(q, chain); },
      scheme, "exp(" + std::to_string(lambda) + " K)");
}

}  // namespace cusp
