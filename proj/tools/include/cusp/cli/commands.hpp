#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace cusp::cli {

enum ExitCode : int { kSuccess = 0, kVerifyFail = 1, kUsage = 2, kNumeric = 3 };

/// Every option of every subcommand. Defaults reproduce the acceptance runs.
struct RunConfig {
  std::string command;
  std::string subcommand;

  double c_g = 16.0;
  double profile_r_max = 1.0;
  std::string chain = "f1,f2,f3";
  std::string format;  // empty: json for integrate, csv otherwise
  std::string out;
  std::uint64_t seed = 0;

  // map
  std::vector<std::string> points;
  int grid = 0;
  int random = 0;
  bool roundtrip = false;
  std::vector<double> t_values{1e-1, 1e-2, 1e-3};

  // distortion
  double r_min = 1e-8;
  double r_max = 1.0;
  int n_r = 64;
  int n_theta = 64;
  bool linear = false;
  double logk_max = 0.0;  // 0 = field maximum
  std::string theta = "pi";
  double fit_r_min = 1e-30;
  double fit_r_max = 1e-2;
  int fit_count = 57;
  double band_lo = 0.05;
  double band_hi = 2.0;

  // integrate
  double kpow = 0.0;
  double explambda = 0.0;
  int k_first = 1;
  int k_last = 64;
  int annuli_per_octave = 2;
  int radial_nodes = 8;
  int angular_nodes = 16;

  // capacity
  double r = 0.2;
  double d = 1.0;
  bool decay = false;
  std::vector<double> s_list{0.5, 1.0, 2.0, 5.0, 10.0};
  std::vector<double> annulus{0.25, 1.0};
  int resolution = 0;  // 0 = 512 for grid, 256 for theorem1
  double weight = 1.0;
  double tolerance = 1e-10;
  int max_iterations = 50000;
  std::vector<double> t_list{0.125, 0.0625, 0.03125, 0.015625, 0.0078125, 0.00390625};
  std::string weight_kind = "inverse-k";
  double rho_far = 6.0;
  double lambda = 1.0;

  // verify
  std::vector<std::string> only;
};

/// Parses "pi", "-pi/2", "3pi/2", "0.5" and the like.
double parse_angle(const std::string& s);

/// Full command line entry point; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cusp::cli
