#include "cusp/theorem1.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "cusp/distortion.hpp"
#include "cusp/domains.hpp"
#include "cusp/errors.hpp"
#include "cusp/gauss_legendre.hpp"

namespace cusp {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;

double log_sum_exp(const std::vector<double>& terms) {
  double m = -std::numeric_limits<double>::infinity();
  for (double t : terms) m = std::max(m, t);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double t : terms) s += std::exp(t - m);
  return m + std::log(s);
}

// K of the chain at x = -1 + e^{-rho} e^{i phi}, through w = f1(x) = z / (2 - z).
double chain_K_logpolar(double rho, double phi, const MapChain& chain) {
  const std::complex<double> z = std::polar(std::exp(-rho), phi);
  const std::complex<double> q = 2.0 - z;
  const LogPolarPoint w{-rho - std::log(std::abs(q)), phi - std::arg(q)};
  return chain_distortion_at_f2_source(w, chain);
}

// int_a^b K(rho, phi) d rho on panels uniform in log(rho - a + 1).
double tube_integral(double a, double b, double phi, const MapChain& chain) {
  const GaussRule& rule = gauss_legendre(6);
  const double s_end = std::log1p(b - a);
  const int panels = std::max(1, static_cast<int>(std::ceil(s_end / 0.5)));
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double s0 = s_end * p / panels;
    const double s1 = s_end * (p + 1) / panels;
    const double c = 0.5 * (s0 + s1);
    const double h = 0.5 * (s1 - s0);
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      const double s = c + h * rule.nodes[k];
      const double e = std::exp(s);
      total += rule.weights[k] * h * e * chain_K_logpolar(a - 1.0 + e, phi, chain);
    }
  }
  return total;
}

bool strictly_decaying(const std::vector<double>& log_values) {
  for (std::size_t k = 1; k < log_values.size(); ++k) {
    if (!(log_values[k] < log_values[k - 1])) return false;
  }
  return log_values.size() >= 2 && log_values.back() <= log_values.front() + std::log(1e-3);
}

}  // namespace

std::string to_string(WeightKind w) { return w == WeightKind::InverseK ? "1/K" : "1"; }

double log_disk_exp_integral(double lambda, const MapChain& chain) {
  if (!(lambda > 0.0)) throw DomainError("log_disk_exp_integral: lambda must be positive");
  // |w| < 1, Re w > 0, with the area factor |d f1^{-1}/dw|^2 = 4 / |1 + w|^4.
  const GaussRule& rad = gauss_legendre(8);
  const GaussRule& ang = gauss_legendre(32);
  std::vector<double> terms;
  for (int panel = 0; panel < 200; ++panel) {
    const double c = panel + 0.5;
    for (std::size_t i = 0; i < rad.nodes.size(); ++i) {
      const double v = c + 0.5 * rad.nodes[i];
      const double r = std::exp(-v);
      for (std::size_t j = 0; j < ang.nodes.size(); ++j) {
        const double theta = kPi / 2 * ang.nodes[j];
        const double K = chain_distortion_at_f2_source({-v, theta}, chain);
        const double mod2 = 1.0 + 2.0 * r * std::cos(theta) + r * r;
        terms.push_back(lambda * K + std::log(4.0) - 2.0 * std::log(mod2) - 2.0 * v +
                        std::log(0.5 * rad.weights[i] * kPi / 2 * ang.weights[j]));
      }
    }
  }
  // |w| > 1 is the right half of the unit disk, where K is constant.
  const double k_out = chain_distortion_at_f2_source({std::log(2.0), 0.0}, chain);
  terms.push_back(lambda * k_out + std::log(kPi / 2));
  return log_sum_exp(terms);
}

Theorem1Report theorem1_experiment(const std::vector<double>& t_list, const MapChain& chain,
                                   const Theorem1Config& cfg) {
  cfg.solver.validate();
  if (!(chain.has(Stage::F1) && chain.has(Stage::F2) && chain.has(Stage::F3))) {
    throw DomainError("theorem1_experiment: needs the full chain");
  }
  if (t_list.empty()) throw DomainError("theorem1_experiment: empty t list");
  for (std::size_t k = 0; k < t_list.size(); ++k) {
    if (!(t_list[k] > 0.0 && t_list[k] < 0.5)) {
      throw DomainError("theorem1_experiment: t must lie in (0, 1/2)");
    }
    if (k > 0 && !(t_list[k] < t_list[k - 1])) {
      throw DomainError("theorem1_experiment: t list must be strictly decreasing");
    }
  }
  if (!(cfg.rho_far > 0.0)) throw DomainError("theorem1_experiment: rho_far must be positive");

  const int res = cfg.solver.resolution;
  const double rho0 = -kLn2;
  const int n_rho = static_cast<int>(std::ceil((cfg.rho_far - rho0) * res));
  const int n_phi = static_cast<int>(std::ceil(kPi * res));
  const double h_rho = (cfg.rho_far - rho0) / n_rho;
  const double h_phi = kPi / n_phi;
  auto rho_at = [&](double i) { return rho0 + (i + 0.5) * h_rho; };
  auto phi_at = [&](double j) { return -kPi / 2 + (j + 0.5) * h_phi; };
  auto point = [&](double rho, double phi) {
    const double e = std::exp(-rho);
    return PlanePoint{-1.0 + e * std::cos(phi), e * std::sin(phi)};
  };
  auto weight = [&](double rho, double phi) {
    return cfg.weight == WeightKind::Unit ? 1.0 : 1.0 / chain_K_logpolar(rho, phi, chain);
  };

  GridProblem base(n_rho, n_phi);
  for (int j = 0; j < n_phi; ++j) {
    for (int i = 0; i < n_rho; ++i) {
      const double rho = rho_at(i);
      const double phi = phi_at(j);
      if (!(std::exp(-rho) < 2.0 * std::cos(phi))) continue;
      base.kind(i, j) = point(rho, phi).norm() <= 0.25 ? NodeKind::Zero : NodeKind::Free;
    }
  }
  for (int j = 0; j < n_phi; ++j) {
    for (int i = 0; i < n_rho; ++i) {
      if (base.kind(i, j) == NodeKind::Outside) continue;
      if (i + 1 < n_rho && base.kind(i + 1, j) != NodeKind::Outside) {
        base.cx(i, j) = weight(rho_at(i + 0.5), phi_at(j)) * h_phi / h_rho;
      }
      if (j + 1 < n_phi && base.kind(i, j + 1) != NodeKind::Outside) {
        base.cy(i, j) = weight(rho_at(i), phi_at(j + 0.5)) * h_rho / h_phi;
      }
    }
  }

  Theorem1Report rep;
  rep.config = cfg;
  rep.log_L = log_disk_exp_integral(cfg.lambda, chain);
  const ProfileParams& params = chain.params();
  const int last = n_rho - 1;
  const double rho_last = rho_at(last);

  for (double t : t_list) {
    Theorem1Row row;
    row.t = t;
    const ImageArc arc = image_boundary_arc(t, chain, cfg.arc_samples);
    row.diam_image_arc = arc_diameter(arc.samples);
    row.diam_model_arc = arc_diameter(boundary_arc(t, cfg.arc_samples));
    row.log_diam_preimage = preimage_arc_diameter(t, chain, cfg.arc_samples).log_value;
    const double log_r = eval_g_inverse_log(arc.s_max, params);
    const double r = std::exp(log_r);
    row.rho_t = -(kLn2 + log_r - 0.5 * std::log1p(r * r));

    GridProblem prob = base;
    if (row.rho_t > rho_last) {
      for (int j = 0; j < n_phi; ++j) {
        if (prob.kind(last, j) != NodeKind::Free) continue;
        const double resistance =
            (cfg.weight == WeightKind::Unit ? row.rho_t - rho_last
                                            : tube_integral(rho_last, row.rho_t, phi_at(j), chain)) /
            h_phi;
        prob.lead(last, j) = 1.0 / resistance;
      }
    } else {
      for (int j = 0; j < n_phi; ++j) {
        for (int i = 0; i < n_rho; ++i) {
          if (prob.kind(i, j) != NodeKind::Free || rho_at(i) < row.rho_t) continue;
          const bool rim = i == last || j == 0 || j == n_phi - 1 ||
                           base.kind(i, j - 1) == NodeKind::Outside ||
                           base.kind(i, j + 1) == NodeKind::Outside ||
                           base.kind(i + 1, j) == NodeKind::Outside;
          if (rim) prob.kind(i, j) = NodeKind::One;
        }
      }
    }
    const GridSolution sol = solve_condenser(prob, cfg.solver);
    row.capacity = sol.energy;
    row.log_capacity = std::log(sol.energy);
    row.cap_over_t = sol.energy / t;
    row.cap_over_t2 = sol.energy / (t * t);
    row.iterations = sol.iterations;
    row.free_nodes = sol.free_nodes;
    row.log_lip_energy = lip_test_energy(t, 1.0).log_value;
    row.capala_bound = capala_lower_bound_log(cfg.lambda, rep.log_L, row.log_diam_preimage, cfg.C);
    row.log_diamarvio_bound =
        diamarvio_bound(row.diam_image_arc, cfg.lambda, cfg.eps, cfg.C, cfg.C_tilde).log_value;
    rep.rows.push_back(row);
  }

  rep.capacity_monotone = true;
  std::vector<double> lt, lt2;
  for (std::size_t k = 0; k < rep.rows.size(); ++k) {
    const Theorem1Row& row = rep.rows[k];
    if (k > 0 && row.capacity > rep.rows[k - 1].capacity) rep.capacity_monotone = false;
    lt.push_back(row.log_capacity - std::log(row.t));
    lt2.push_back(row.log_capacity - 2.0 * std::log(row.t));
  }
  rep.ratio_t_decay = strictly_decaying(lt);
  rep.ratio_t2_decay = strictly_decaying(lt2);
  return rep;
}

}  // namespace cusp
