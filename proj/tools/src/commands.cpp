#include "cusp/cli/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "cusp/capacity.hpp"
#include "cusp/cli/acceptance.hpp"
#include "cusp/cli/output.hpp"
#include "cusp/cli/sampling.hpp"
#include "cusp/distortion.hpp"
#include "cusp/errors.hpp"
#include "cusp/maps.hpp"
#include "cusp/quadrature.hpp"
#include "cusp/theorem1.hpp"

namespace cusp::cli {
namespace {

constexpr double kPi = std::numbers::pi;

using Json = nlohmann::json;

struct Emitter {
  std::ostream& os;
  Format format;

  void table(const Table& t, Json extra = Json::object()) const {
    if (format == Format::Csv) {
      write_csv(os, t);
    } else if (format == Format::Json) {
      extra["rows"] = t.to_json();
      write_json(os, extra);
    } else {
      throw std::invalid_argument("this command has no pgm output");
    }
  }
};

MapChain chain_of(const RunConfig& c) {
  return MapChain::parse(c.chain, ProfileParams(c.c_g, c.profile_r_max));
}

PlanePoint parse_point(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("point must be x1,x2: " + s);
  std::size_t used = 0;
  const std::string a = s.substr(0, comma);
  const std::string b = s.substr(comma + 1);
  const double x1 = std::stod(a, &used);
  if (used != a.size()) throw std::invalid_argument("bad coordinate: " + a);
  const double x2 = std::stod(b, &used);
  if (used != b.size()) throw std::invalid_argument("bad coordinate: " + b);
  return {x1, x2};
}

std::vector<double> log_space(double lo, double hi, int n) {
  if (!(lo > 0.0 && hi > lo) || n < 2) throw std::invalid_argument("need 0 < lo < hi, n >= 2");
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    out[i] = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (n - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

int map_sample(const RunConfig& c, const Emitter& em) {
  const MapChain chain = chain_of(c);
  std::vector<PlanePoint> pts;
  for (const std::string& s : c.points) pts.push_back(parse_point(s));
  if (c.grid > 0) {
    for (int j = 0; j < c.grid; ++j) {
      for (int i = 0; i < c.grid; ++i) {
        const PlanePoint p{-0.99 + 1.98 * (i + 0.5) / c.grid, -0.99 + 1.98 * (j + 0.5) / c.grid};
        if (p.norm() <= 0.99) pts.push_back(p);
      }
    }
  }
  if (c.random > 0) {
    Halton2 seq(c.seed);
    for (int k = 0; k < c.random; ++k) {
      const auto [u, v] = seq.next();
      const double rad = 0.99 * std::sqrt(u);
      pts.push_back({rad * std::cos(2 * kPi * v), rad * std::sin(2 * kPi * v)});
    }
  }
  if (pts.empty()) throw std::invalid_argument("map sample needs --points, --grid or --random");

  Table t{{"x1", "x2", "fx1", "fx2"}, {}};
  if (c.roundtrip) t.columns.insert(t.columns.end(), {"inv_x1", "inv_x2", "roundtrip_err"});
  double worst = 0.0;
  for (const PlanePoint& x : pts) {
    const PlanePoint y = apply_chain(x, chain);
    const double y1 = y.at_infinity ? INFINITY : y.x1;
    const double y2 = y.at_infinity ? INFINITY : y.x2;
    std::vector<Cell> row{x.x1, x.x2, y1, y2};
    if (c.roundtrip) {
      const PlanePoint b = apply_chain_inv(y, chain);
      const double err = b.at_infinity ? INFINITY : std::hypot(b.x1 - x.x1, b.x2 - x.x2);
      worst = std::max(worst, err);
      row.insert(row.end(), {b.x1, b.x2, err});
    }
    t.add(std::move(row));
  }
  Json extra{{"chain", chain.describe()}};
  if (c.roundtrip) extra["max_roundtrip_err"] = worst;
  em.table(t, extra);
  return kSuccess;
}

int map_trace(const RunConfig& c, const Emitter& em) {
  if (c.t_values.empty()) throw std::invalid_argument("--t needs at least one value");
  const std::vector<BoundaryTracePoint> trace = boundary_image_trace(c.t_values);
  Table t{{"t", "cusp_x1", "cusp_x2", "image_x1", "image_x2", "residual", "residual_over_t2"}, {}};
  for (const BoundaryTracePoint& p : trace) {
    t.add({p.t, p.cusp_point.x1, p.cusp_point.x2, p.image.x1, p.image.x2, p.residual,
           p.residual / (p.t * p.t)});
  }
  const auto [lo, hi] = std::minmax_element(c.t_values.begin(), c.t_values.end());
  const QuadraticFit fit = fit_boundary_residual(trace, *lo, *hi);
  em.table(t, Json{{"fit_C", fit.C}, {"fit_points", fit.points}});
  return kSuccess;
}

int distortion_field_cmd(const RunConfig& c, const Emitter& em) {
  const MapChain chain = chain_of(c);
  PolarGrid grid;
  grid.r_min = c.r_min;
  grid.r_max = c.r_max;
  grid.n_r = c.n_r;
  grid.n_theta = c.n_theta;
  grid.log_spacing = !c.linear;
  const std::vector<DistortionSample> field = distortion_field(grid, chain);
  if (em.format == Format::Pgm) {
    double hi = c.logk_max;
    if (!(hi > 0.0)) {
      for (const DistortionSample& s : field) hi = std::max(hi, std::log(s.K));
      if (!(hi > 0.0)) hi = 1.0;
    }
    GreyImage img{grid.n_theta, grid.n_r, {}};
    img.pixels.reserve(field.size());
    for (const DistortionSample& s : field) img.pixels.push_back(grey_level(std::log(s.K), 0.0, hi));
    write_pgm(em.os, img);
    return kSuccess;
  }
  Table t{{"r", "theta", "sector", "K", "op_norm", "jac_det"}, {}};
  double k_min = INFINITY;
  double k_max = 0.0;
  for (const DistortionSample& s : field) {
    k_min = std::min(k_min, s.K);
    k_max = std::max(k_max, s.K);
    t.add({s.base.r, s.base.theta, s.base.sector == Sector::Inner ? "inner" : "outer", s.K,
           s.op_norm, s.jac_det});
  }
  em.table(t, Json{{"chain", chain.describe()}, {"K_min", k_min}, {"K_max", k_max}});
  return kSuccess;
}

int distortion_fit(const RunConfig& c, const Emitter& em, std::ostream& err) {
  const ProfileParams params(c.c_g, c.profile_r_max);
  std::vector<double> radii = log_space(c.fit_r_min, c.fit_r_max, c.fit_count);
  std::reverse(radii.begin(), radii.end());
  const double theta = parse_angle(c.theta);
  const BoundRatioReport rep = bound_ratio_fit(radii, theta, params, c.band_lo, c.band_hi);
  Table t{{"r", "K", "bound", "ratio"}, {}};
  for (const BoundRatioRow& row : rep.rows) t.add({row.r, row.K, row.bound, row.ratio});
  em.table(t, Json{{"theta", rep.theta},
                   {"min_ratio", rep.min_ratio},
                   {"max_ratio", rep.max_ratio},
                   {"band", {rep.band_lo, rep.band_hi}},
                   {"limit_estimate", rep.limit_estimate},
                   {"verdict", rep.pass ? "PASS" : "FAIL"}});
  err << (rep.pass ? "PASS" : "FAIL") << " ratio range [" << format_double(rep.min_ratio) << ", "
      << format_double(rep.max_ratio) << "]\n";
  return kSuccess;
}

int integrate_cmd(const RunConfig& c, const Emitter& em) {
  if ((c.kpow > 0.0) == (c.explambda > 0.0)) {
    throw std::invalid_argument("integrate needs exactly one of --kpow and --explambda");
  }
  const MapChain chain = chain_of(c);
  const AnnularScheme scheme = AnnularScheme::dyadic(c.k_first, c.k_last, c.annuli_per_octave,
                                                     c.radial_nodes, c.angular_nodes);
  const IntegrabilityReport rep = c.kpow > 0.0 ? integral_K_pow(c.kpow, scheme, chain)
                                               : integral_exp_K(c.explambda, scheme, chain);
  Table t{{"log_eps", "eps", "value", "log_value", "log_increment"}, {}};
  for (const PartialIntegral& p : rep.partials) {
    t.add({p.log_eps, p.eps, p.value, p.log_value, p.log_increment});
  }
  em.table(t, Json{{"integrand", rep.integrand},
                   {"chain", chain.describe()},
                   {"verdict", to_string(rep.verdict)},
                   {"log_increment_ratios", rep.log_increment_ratios}});
  return kSuccess;
}

int capacity_test_fn(const RunConfig& c, const Emitter& em) {
  const CapacityEstimate est = lip_test_energy(c.r, c.d);
  Json extra{{"r", c.r},
             {"d", c.d},
             {"value", est.value},
             {"log_value", est.log_value},
             {"method", to_string(est.method)},
             {"exact_energy", lip_test_exact_energy(c.r, c.d).value}};
  if (!c.decay) {
    Table t{{"r", "d", "value", "log_value"}, {}};
    t.add({c.r, c.d, est.value, est.log_value});
    em.table(t, extra);
    return kSuccess;
  }
  std::vector<double> r_list;
  for (int k = 3; k <= 12; ++k) r_list.push_back(std::ldexp(1.0, -k));
  const DecayReport rep = superpoly_decay_check(c.s_list, r_list, c.d);
  Table t{{"s", "r", "log_ratio", "series_pass"}, {}};
  for (const DecaySeries& ser : rep.series) {
    for (std::size_t k = 0; k < ser.r_values.size(); ++k) {
      t.add({ser.s, ser.r_values[k], ser.log_ratios[k], std::int64_t{ser.pass}});
    }
  }
  extra["decay_pass"] = rep.pass;
  em.table(t, extra);
  return kSuccess;
}

GridSolverConfig solver_config(const RunConfig& c, int default_resolution) {
  GridSolverConfig cfg;
  cfg.resolution = c.resolution > 0 ? c.resolution : default_resolution;
  cfg.tolerance = c.tolerance;
  cfg.max_iterations = c.max_iterations;
  return cfg;
}

int capacity_grid(const RunConfig& c, const Emitter& em) {
  if (c.annulus.size() != 2) throw std::invalid_argument("--annulus takes two radii");
  const GridSolverConfig cfg = solver_config(c, 512);
  const CapacityEstimate est = annulus_capacity(c.annulus[0], c.annulus[1], cfg, c.weight);
  const double exact = c.weight * 2 * kPi / std::log(c.annulus[1] / c.annulus[0]);
  Table t{{"r_in", "r_out", "resolution", "capacity", "exact", "rel_err", "iterations"}, {}};
  t.add({c.annulus[0], c.annulus[1], std::int64_t{cfg.resolution}, est.value, exact,
         est.value / exact - 1.0, std::int64_t{est.iterations}});
  em.table(t, Json{{"method", to_string(est.method)}, {"pair", est.pair_desc}});
  return kSuccess;
}

int capacity_theorem1(const RunConfig& c, const Emitter& em) {
  Theorem1Config cfg;
  cfg.solver = solver_config(c, 256);
  cfg.rho_far = c.rho_far;
  cfg.lambda = c.lambda;
  if (c.weight_kind == "inverse-k") {
    cfg.weight = WeightKind::InverseK;
  } else if (c.weight_kind == "unit") {
    cfg.weight = WeightKind::Unit;
  } else {
    throw std::invalid_argument("--weight-kind must be inverse-k or unit");
  }
  const Theorem1Report rep = theorem1_experiment(c.t_list, chain_of(c), cfg);
  Table t{{"t", "diam_image_arc", "diam_model_arc", "log_diam_preimage", "rho_t", "capacity",
           "log_capacity", "cap_over_t", "cap_over_t2", "log_lip_energy", "capala_bound",
           "log_diamarvio_bound", "iterations"},
          {}};
  for (const Theorem1Row& r : rep.rows) {
    t.add({r.t, r.diam_image_arc, r.diam_model_arc, r.log_diam_preimage, r.rho_t, r.capacity,
           r.log_capacity, r.cap_over_t, r.cap_over_t2, r.log_lip_energy, r.capala_bound,
           r.log_diamarvio_bound, std::int64_t{r.iterations}});
  }
  em.table(t, Json{{"weight", to_string(cfg.weight)},
                   {"log_L", rep.log_L},
                   {"capacity_monotone", rep.capacity_monotone},
                   {"cap_over_t_decays", rep.ratio_t_decay},
                   {"cap_over_t2_decays", rep.ratio_t2_decay}});
  return kSuccess;
}

int verify_cmd(const RunConfig& c, std::ostream& out) {
  AcceptanceOptions opts;
  opts.params = ProfileParams(c.c_g, c.profile_r_max);
  opts.seed = c.seed;
  opts.only = c.only;
  const std::vector<CriterionResult> results = run_acceptance(opts);
  if (results.empty()) throw std::invalid_argument("--only selects no criterion");
  bool all = true;
  for (const CriterionResult& r : results) {
    out << summary_line(r) << '\n';
    all = all && r.pass;
  }
  out << (all ? "all criteria passed" : "some criteria failed") << '\n';
  if (!c.out.empty()) {
    namespace fs = std::filesystem;
    const fs::path dir(c.out);
    fs::create_directories(dir);
    Table verdicts{{"id", "key", "verdict"}, {}};
    for (const CriterionResult& r : results) {
      verdicts.add({std::int64_t{r.info.id}, r.info.key, r.pass ? "PASS" : "FAIL"});
      for (const Artifact& a : r.artifacts) {
        std::ofstream f(dir / (std::to_string(r.info.id) + "-" + a.name), std::ios::binary);
        f << a.content;
      }
    }
    std::ofstream f(dir / "verdicts.csv", std::ios::binary);
    write_csv(f, verdicts);
  }
  return all ? kSuccess : kVerifyFail;
}

}  // namespace

double parse_angle(const std::string& text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s += static_cast<char>(std::tolower(ch));
  }
  const auto at = s.find("pi");
  if (at == std::string::npos) {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("bad angle: " + text);
    return v;
  }
  std::string coef = s.substr(0, at);
  if (!coef.empty() && coef.back() == '*') coef.pop_back();
  double factor = 1.0;
  if (coef == "-") {
    factor = -1.0;
  } else if (!coef.empty() && coef != "+") {
    std::size_t used = 0;
    factor = std::stod(coef, &used);
    if (used != coef.size()) throw std::invalid_argument("bad angle: " + text);
  }
  const std::string rest = s.substr(at + 2);
  double div = 1.0;
  if (!rest.empty()) {
    if (rest[0] != '/') throw std::invalid_argument("bad angle: " + text);
    std::size_t used = 0;
    div = std::stod(rest.substr(1), &used);
    if (used != rest.size() - 1 || div == 0.0) throw std::invalid_argument("bad angle: " + text);
  }
  return factor * kPi / div;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Numerical experiments on a finite-distortion map onto an exponential cusp"};
  app.set_config("--config", "", "key=value configuration file");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--cg", c.c_g, "profile constant c_g")->capture_default_str();
  app.add_option("--profile-rmax", c.profile_r_max, "outer radius of the cusp profile")
      ->capture_default_str();
  app.add_option("--chain", c.chain, "map stages, e.g. f1,f2,f3 or f1")->capture_default_str();
  app.add_option("--out", c.out, "output file (verify: artifact directory)");
  app.add_option("--format", c.format, "csv, json or pgm")
      ->check(CLI::IsMember({"csv", "json", "pgm"}));
  app.add_option("--seed", c.seed, "skip offset of the quasi-random sequence")
      ->capture_default_str();

  CLI::App* map = app.add_subcommand("map", "apply the map chain");
  map->require_subcommand(1);
  CLI::App* sample = map->add_subcommand("sample", "images of points");
  sample->add_option("--points", c.points, "points x1,x2 separated by ';'")->delimiter(';');
  sample->add_option("--grid", c.grid, "N x N grid clipped to |x| <= 0.99");
  sample->add_option("--random", c.random, "N quasi-random points in |x| <= 0.99");
  sample->add_flag("--roundtrip", c.roundtrip, "add the inverse and its error");
  CLI::App* trace = map->add_subcommand("trace-boundary", "image of the cusp boundary under f3");
  trace->add_option("--t", c.t_values, "cusp abscissas")->delimiter(',')->capture_default_str();

  CLI::App* dist = app.add_subcommand("distortion", "distortion of the map");
  dist->require_subcommand(1);
  CLI::App* field = dist->add_subcommand("field", "K on a polar grid");
  field->add_option("--r-min", c.r_min)->capture_default_str();
  field->add_option("--r-max", c.r_max)->capture_default_str();
  field->add_option("--nr", c.n_r)->capture_default_str();
  field->add_option("--ntheta", c.n_theta)->capture_default_str();
  field->add_flag("--linear", c.linear, "linear instead of logarithmic radii");
  field->add_option("--logk-max", c.logk_max, "upper end of the pgm grey scale (log K)");
  CLI::App* fit = dist->add_subcommand("fit-bound", "K / (L1 L2) along a ray");
  fit->add_option("--theta", c.theta, "angle, e.g. pi or -pi/4")->capture_default_str();
  fit->add_option("--r-min", c.fit_r_min)->capture_default_str();
  fit->add_option("--r-max", c.fit_r_max)->capture_default_str();
  fit->add_option("--count", c.fit_count)->capture_default_str();
  fit->add_option("--band-lo", c.band_lo)->capture_default_str();
  fit->add_option("--band-hi", c.band_hi)->capture_default_str();

  CLI::App* integ = app.add_subcommand("integrate", "partial integrals toward the singular point");
  integ->add_option("--kpow", c.kpow, "integrate K^p");
  integ->add_option("--explambda", c.explambda, "integrate exp(lambda K)");
  integ->add_option("--k-first", c.k_first)->capture_default_str();
  integ->add_option("--k-last", c.k_last)->capture_default_str();
  integ->add_option("--annuli-per-octave", c.annuli_per_octave)->capture_default_str();
  integ->add_option("--radial-nodes", c.radial_nodes)->capture_default_str();
  integ->add_option("--angular-nodes", c.angular_nodes)->capture_default_str();

  CLI::App* cap = app.add_subcommand("capacity", "condenser capacities");
  cap->require_subcommand(1);
  CLI::App* testfn = cap->add_subcommand("test-fn", "energy of the cusp test function");
  testfn->add_option("--r", c.r)->capture_default_str();
  testfn->add_option("--d", c.d)->capture_default_str();
  testfn->add_flag("--decay", c.decay, "energy(r) / r^s along r = 2^-3 .. 2^-12");
  testfn->add_option("--s", c.s_list)->delimiter(',')->capture_default_str();
  CLI::App* grid = cap->add_subcommand("grid", "annulus condenser on a grid");
  grid->add_option("--annulus", c.annulus, "inner and outer radius")->expected(2);
  grid->add_option("--resolution", c.resolution, "nodes per unit length (default 512)");
  grid->add_option("--weight", c.weight)->capture_default_str();
  grid->add_option("--tolerance", c.tolerance)->capture_default_str();
  grid->add_option("--max-iterations", c.max_iterations)->capture_default_str();
  CLI::App* thm = cap->add_subcommand("theorem1", "weighted capacity of the pulled-back arcs");
  thm->add_option("--t", c.t_list, "decreasing arc radii")->delimiter(',');
  thm->add_option("--resolution", c.resolution, "nodes per unit length (default 256)");
  thm->add_option("--weight-kind", c.weight_kind, "inverse-k or unit")->capture_default_str();
  thm->add_option("--rho-far", c.rho_far)->capture_default_str();
  thm->add_option("--lambda", c.lambda)->capture_default_str();
  thm->add_option("--tolerance", c.tolerance)->capture_default_str();
  thm->add_option("--max-iterations", c.max_iterations)->capture_default_str();

  CLI::App* ver = app.add_subcommand("verify", "acceptance suite");
  ver->add_option("--only", c.only, "criterion ids, keys or groups")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    std::ofstream file;
    std::ostream* os = &out;
    const bool verify = ver->parsed();
    if (!c.out.empty() && !verify) {
      file.open(c.out, std::ios::binary);
      if (!file) throw std::invalid_argument("cannot open " + c.out);
      os = &file;
    }
    const bool integrate = integ->parsed();
    const Format format =
        parse_format(c.format.empty() ? (integrate ? "json" : "csv") : c.format);
    const Emitter em{*os, format};
    if (sample->parsed()) return map_sample(c, em);
    if (trace->parsed()) return map_trace(c, em);
    if (field->parsed()) return distortion_field_cmd(c, em);
    if (fit->parsed()) return distortion_fit(c, em, err);
    if (integrate) return integrate_cmd(c, em);
    if (testfn->parsed()) return capacity_test_fn(c, em);
    if (grid->parsed()) return capacity_grid(c, em);
    if (thm->parsed()) return capacity_theorem1(c, em);
    if (verify) return verify_cmd(c, out);
    throw std::invalid_argument("no command given");
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "numeric error: " << e.what() << '\n';
    return kNumeric;
  }
}

}  // namespace cusp::cli
